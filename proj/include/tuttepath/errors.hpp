#pragma once

#include <stdexcept>
#include <string>

namespace tuttepath {

/// Bad user input: malformed files, queries that violate their preconditions.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed rotation system or an impossible surgery request.
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A configured cap (oracle size, generator depth) was exceeded.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Violated internal invariant. Carries a context string for diagnosis.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

#define TUTTEPATH_CHECK(cond, msg)                                                  \
  do {                                                                              \
    if (!(cond)) throw ::tuttepath::InternalError(std::string("check failed: ") + \
                                                  #cond + ": " + (msg));           \
  } while (0)

}  // namespace tuttepath
