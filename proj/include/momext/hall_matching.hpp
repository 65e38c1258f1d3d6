#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "momext/partitions.hpp"
#include "momext/weights.hpp"

namespace momext {

// Demand/supply sides of the feasibility problem for one weight table.
// n_index/p_index are canonical partition indices; neighbors[i] lists, in
// ascending order, positions into p_index of the partitions dominating
// n_index[i]. Constructible by hand for synthetic test instances.
struct BipartiteInstance {
  int d = 0;
  long q = 0;
  std::vector<std::size_t> n_index;
  std::vector<std::size_t> p_index;
  std::vector<Rational> demand;  // -omega_n, > 0
  std::vector<Rational> supply;  // omega_p, >= 0
  std::vector<std::vector<std::size_t>> neighbors;

  static BipartiteInstance from_table(const WeightTable& table, const PartitionPoset& poset);
};

struct HallVerdict {
  enum class Kind { holds, violated, aborted_too_large };
  Kind kind = Kind::holds;
  std::vector<std::size_t> violating_n;  // positions into inst.n_index
  Rational deficit;                      // demand(U) - supply(neighbors(U)), > 0 when violated
  bool holds() const { return kind == Kind::holds; }
};

// Checks demand(U) <= supply(neighbors(U)) for every nonempty U subset of N
// by depth-first enumeration, pruning a subtree once the current slack covers
// all remaining demand. Aborts (without deciding) when |N| > cap.
HallVerdict check_hall_subsets(const BipartiteInstance& inst, int cap = 20);

// Same verdict via exact integral max-flow: clear denominators with one
// common multiple, run shortest-augmenting-path max-flow on the
// source -> N -> P -> sink network, and compare against total demand. On a
// deficiency the violating U is read off the min cut (N vertices reachable
// from the source in the residual graph).
HallVerdict check_hall_flow(const BipartiteInstance& inst);

struct TauEntry {
  std::size_t n = 0;  // canonical partition index
  std::size_t p = 0;
  Rational value;
};

// Fractional matching proving the weighted inequality for one (d,q):
// non-negative tau supported on comparable pairs, with row sums -omega_n and
// column sums omega_p. Carries a full copy of the weight data so the file is
// self-describing.
struct MatchingCertificate {
  int schema_version = 1;
  int d = 0;
  long q = 0;
  Rational a;
  std::vector<Partition> partitions;  // canonical order
  std::vector<Rational> omega;
  std::vector<std::size_t> n_indices;
  std::vector<std::size_t> p_indices;
  std::vector<TauEntry> tau;  // sorted by (n, p)
  std::string method = "flow";
  std::string generator_version;
  std::uint64_t table_digest = 0;  // in-memory only
};

// Runs the flow check and decomposes the resulting flow into tau values,
// rescaled back to exact rationals. Throws if the instance is infeasible.
MatchingCertificate construct_certificate(const BipartiteInstance& inst, const WeightTable& table,
                                          const PartitionPoset& poset);

// Re-checks all certificate invariants (non-negativity, comparability of the
// support, row sums, column sums) with arithmetic independent of the flow
// solver. Rejects certificates built for a different (d,q) or table.
bool verify_certificate(const MatchingCertificate& cert, const WeightTable& table,
                        std::string* reason = nullptr);

}  // namespace momext
