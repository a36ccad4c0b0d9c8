#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tuttepath/embedding.hpp"
#include "tuttepath/errors.hpp"
#include "tuttepath/structure.hpp"
#include "tuttepath/third.hpp"

namespace tuttepath {

/// One vertex-counted piece of a main-induction decomposition.
struct PieceRecord {
  std::string tag;         // "contracted", "first-edge", ..., "link", "pocket", "pocket-off-path"
  std::size_t size = 0;    // vertices of the piece, markers included
  std::size_t overlap = 0; // vertices already counted by earlier pieces
  int entry = -1;          // ledger entry of the recursive call, if any
  std::optional<std::int64_t> beta;
  std::optional<Third> budget;
};

/// One solver call. Entries form a tree through `parent`.
struct LedgerEntry {
  int id = 0;
  int parent = -1;
  std::string rule;  // "base", "split-2cut", "endpoint-cut-direct", "endpoint-cut-split", "degree-two", "decompose-bad-arc", "decompose-good-arc", "oracle"
  std::size_t order = 0;
  Vertex u = 0, v = 0;
  Edge e;
  bool mirrored = false;
  std::vector<Vertex> path;
  std::int64_t beta = 0;
  Third bound;
  std::vector<PieceRecord> pieces;
  std::vector<std::string> notes;

  /// Sum of piece sizes minus overlaps; equals `order` for a complete decomposition.
  std::int64_t piece_balance() const {
    std::int64_t s = 0;
    for (const auto& p : pieces) s += static_cast<std::int64_t>(p.size) - static_cast<std::int64_t>(p.overlap);
    return s;
  }
};

struct TuttePathCertificate {
  std::size_t order = 0;
  Vertex u = 0, v = 0;
  Edge e;
  std::vector<Vertex> path;
  std::vector<Bridge> bridges;
  std::int64_t beta = 0;
  Third bound;
  Third tau_vu, tau_ue, tau_ev;
  std::vector<LedgerEntry> trace;

  bool contains_e() const {
    for (std::size_t i = 0; i + 1 < path.size(); ++i)
      if (Edge(path[i], path[i + 1]) == e) return true;
    return false;
  }
};

/// Raised when a solver step breaks its own budget. Carries the trace so far.
class CertifiedFailure : public InternalError {
 public:
  CertifiedFailure(const std::string& what, std::vector<LedgerEntry> trace)
      : InternalError(what), trace_(std::move(trace)) {}
  const std::vector<LedgerEntry>& trace() const { return trace_; }

 private:
  std::vector<LedgerEntry> trace_;
};

}  // namespace tuttepath
