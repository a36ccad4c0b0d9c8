#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "tuttepath/embedding.hpp"
#include "tuttepath/errors.hpp"

namespace tuttepath::labkit {

/// An abstract graph on vertices 0..n-1 without an embedding.
struct SimpleGraph {
  int n = 0;
  std::vector<Edge> edges;  // sorted, no duplicates
};

inline SimpleGraph simple_graph_of(const RotationEmbedding& g) {
  SimpleGraph s;
  s.n = g.vertex_count() == 0 ? 0 : g.max_vertex() + 1;
  s.edges = g.edges();
  return s;
}

/// graph6 text for s (no header, no newline).
inline std::string emit_graph6(const SimpleGraph& s) {
  std::string out;
  const auto n = static_cast<std::uint64_t>(s.n);
  if (n <= 62) {
    out.push_back(static_cast<char>(63 + n));
  } else if (n <= 258047) {
    out.push_back(126);
    for (int shift : {12, 6, 0}) out.push_back(static_cast<char>(63 + ((n >> shift) & 63)));
  } else {
    out.push_back(126);
    out.push_back(126);
    for (int shift : {30, 24, 18, 12, 6, 0}) out.push_back(static_cast<char>(63 + ((n >> shift) & 63)));
  }
  std::vector<bool> adj(static_cast<std::size_t>(n * n), false);
  for (const Edge& e : s.edges) {
    adj[static_cast<std::size_t>(e.a) * n + static_cast<std::size_t>(e.b)] = true;
    adj[static_cast<std::size_t>(e.b) * n + static_cast<std::size_t>(e.a)] = true;
  }
  int acc = 0, bits = 0;
  for (std::uint64_t j = 1; j < n; ++j)
    for (std::uint64_t i = 0; i < j; ++i) {
      acc = (acc << 1) | (adj[i * n + j] ? 1 : 0);
      if (++bits == 6) {
        out.push_back(static_cast<char>(63 + acc));
        acc = bits = 0;
      }
    }
  if (bits > 0) out.push_back(static_cast<char>(63 + (acc << (6 - bits))));
  return out;
}

/// Parses one graph6 line. Accepts an optional ">>graph6<<" header and
/// trailing whitespace; rejects bad bytes, wrong length and nonzero padding.
inline SimpleGraph parse_graph6(std::string text) {
  const std::string header = ">>graph6<<";
  if (text.rfind(header, 0) == 0) text.erase(0, header.size());
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r' || text.back() == ' ')) text.pop_back();
  if (text.empty()) throw InputError("graph6: empty input");
  for (char c : text)
    if (c < 63 || c > 126) throw InputError("graph6: byte out of range");
  std::size_t pos = 0;
  auto take = [&](int count) {
    std::uint64_t v = 0;
    for (int k = 0; k < count; ++k) {
      if (pos >= text.size()) throw InputError("graph6: truncated size field");
      v = (v << 6) | static_cast<std::uint64_t>(text[pos++] - 63);
    }
    return v;
  };
  std::uint64_t n = 0;
  if (text[0] != 126) {
    n = take(1);
  } else if (text.size() > 1 && text[1] != 126) {
    ++pos;
    n = take(3);
  } else {
    pos += 2;
    n = take(6);
  }
  const std::uint64_t nbits = n * (n - (n > 0 ? 1 : 0)) / 2;
  const std::uint64_t nbytes = (nbits + 5) / 6;
  if (text.size() - pos != nbytes) throw InputError("graph6: wrong number of adjacency bytes");
  SimpleGraph s;
  s.n = static_cast<int>(n);
  std::uint64_t k = 0;
  for (std::uint64_t j = 1; j < n; ++j)
    for (std::uint64_t i = 0; i < j; ++i, ++k) {
      const int byte = text[pos + k / 6] - 63;
      if ((byte >> (5 - k % 6)) & 1) s.edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(j));
    }
  if (nbits % 6 != 0) {
    const int last = text.back() - 63;
    if (last & ((1 << (6 - nbits % 6)) - 1)) throw InputError("graph6: nonzero padding");
  }
  std::sort(s.edges.begin(), s.edges.end());
  return s;
}

}  // namespace tuttepath::labkit
