#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "momext/rational.hpp"

namespace momext {

// A partition of d, stored as a fixed-length vector of d non-increasing
// non-negative parts summing to d. Trailing zeros are kept so that every
// partition of the same d has the same length.
class Partition {
 public:
  explicit Partition(std::vector<int> parts);

  int d() const { return static_cast<int>(parts_.size()); }
  const std::vector<int>& parts() const { return parts_; }
  int operator[](std::size_t i) const { return parts_[i]; }

  bool operator==(const Partition& other) const = default;
  bool operator<(const Partition& other) const { return parts_ < other.parts_; }

  // "(2,1,0)"
  std::string str() const;

 private:
  std::vector<int> parts_;
};

// All partitions of d in decreasing lexicographic order, so (d,0,...,0) comes
// first and (1,1,...,1) last. Indices into this list are the canonical
// partition indices used by weight tables and certificates.
std::vector<Partition> enumerate_partitions(int d);

// Dominance (majorization) order: a <= b iff every prefix sum of a is <= the
// corresponding prefix sum of b. Partial order; requires equal d.
bool dominance_leq(const Partition& a, const Partition& b);

// Number of strictly positive parts.
int rho(const Partition& l);

// l_1! * l_2! * ... * l_d!
BigInt ell_factorial(const Partition& l);

// d! / (l_1! ... l_d!)
BigInt multinomial_d(const Partition& l);

// q! / (b_0! b_1! ... b_d!), computed as the falling factorial
// q(q-1)...(q-k+1) / prod_{j>=1} b_j!  with k the number of positive parts,
// so q! is never formed. Requires q >= d+1.
BigInt multinomial_q(const Partition& l, long q);

struct BVector {
  std::vector<long> counts;  // b_0 .. b_d
  long q = 0;
};

// b_j = #{i : l_i = j} for j >= 1 and b_0 = #{i : l_i = 0} + (q - d).
// Requires q >= d+1.
BVector b_vector(const Partition& l, long q);

// e^{pi sqrt(2d/3)} / (4 d sqrt(3)); a sanity estimate of p(d), not used in
// any exact computation.
double hardy_ramanujan_estimate(int d);

// The partitions of d together with the dominance relation. For d <= 20 the
// full p(d)^2 comparability table is precomputed (the matching module queries
// it heavily); beyond that, queries fall back to the O(d) prefix-sum test.
// Immutable after construction and safe to share across threads.
class PartitionPoset {
 public:
  explicit PartitionPoset(int d);

  int d() const { return d_; }
  std::size_t size() const { return elements_.size(); }
  const Partition& operator[](std::size_t i) const { return elements_[i]; }
  const std::vector<Partition>& elements() const { return elements_; }

  // dominance: elements()[a] <= elements()[b]
  bool leq(std::size_t a, std::size_t b) const;

  std::optional<std::size_t> index_of(const Partition& l) const;

  std::size_t top_index() const { return 0; }                     // (d,0,...,0)
  std::size_t bottom_index() const { return elements_.size() - 1; }  // (1,...,1)

 private:
  int d_;
  std::vector<Partition> elements_;
  std::vector<std::uint8_t> leq_table_;  // empty when d > 20
};

}  // namespace momext
