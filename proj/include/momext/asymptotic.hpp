#pragma once

#include "momext/partitions.hpp"
#include "momext/weights.hpp"

namespace momext {

// Large-q bound d(d-1)/(2 log 6) + (2d-1)/3. The floating evaluation is
// rounded outward (up), so the explicit search range [d+1, q_search_max] is
// never too small; q >= ceil_threshold is covered by the large-q argument.
struct ThresholdReport {
  int d = 0;
  double threshold = 0.0;
  long ceil_threshold = 0;
  long q_search_max = 0;  // ceil_threshold - 1
  bool explicit_range_empty() const { return q_search_max < d + 1; }
};

ThresholdReport threshold(int d);

// True iff d!/A <= 6 (exact rational comparison). When true, N can only
// contain (1,...,1), (2,1,...,1,0) and (2,2,1,...,1,0,0), and every member of
// N is dominance-below every member of P; both facts are asserted and a
// failure throws, since it would contradict the sign criterion.
bool small_N_condition(const WeightTable& table, const PartitionPoset& poset);
bool small_N_condition(int d, long q);

// Re-verifies every implication link of the large-q derivation at a concrete
// (d,q): the quadratic bound in q, the power-sum bound on log 6, the
// logarithmic inequality, the exact product lower bound with the all-ones
// partition, and the resulting d!/A <= 6. Requires q >= max(2d,
// ceil_threshold(d)); rejects smaller q rather than extrapolating.
bool large_q_chain_check(int d, long q);

}  // namespace momext
