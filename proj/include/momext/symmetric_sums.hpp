#pragma once

#include <string>
#include <vector>

#include "momext/hall_matching.hpp"
#include "momext/partitions.hpp"
#include "momext/rational.hpp"
#include "momext/weights.hpp"

namespace momext {

// q non-negative rational variables; semantically the squared moduli
// {|f(xi)|^2 : xi on the curve}.
class VariableVector {
 public:
  explicit VariableVector(std::vector<Rational> values);

  std::size_t size() const { return values_.size(); }
  const Rational& operator[](std::size_t i) const { return values_[i]; }
  const std::vector<Rational>& values() const { return values_; }

  std::size_t zero_count() const;
  bool all_equal() const;

 private:
  std::vector<Rational> values_;
};

// The symmetrized sum over all q! permutations of x_1^{l_1} ... x_d^{l_d},
// evaluated without enumerating the symmetric group: injective index tuples
// grouped by exponent multiplicity, scaled by (q - rho(l))!. Requires
// |x| >= d.
Rational sigma_ell(const Partition& l, const VariableVector& x);

struct MuirheadComparison {
  Rational lower;  // Sigma_a
  Rational upper;  // Sigma_b
  bool equal = false;
};

// Requires a <= b in dominance order (rejects incomparable pairs); the
// returned values always satisfy lower <= upper.
MuirheadComparison muirhead_compare(const Partition& a, const Partition& b,
                                    const VariableVector& x);

// Equality cases of the symmetric-sum inequality, decided from (a, b, x)
// without evaluating either side. The prediction is: equality holds iff the
// classification is not `strict`.
enum class MuirheadCase {
  identical_partitions,  // a == b
  constant_variables,    // all x equal
  vanishing_support,     // fewer than rho(b) positive variables: both sides 0
  matched_support,       // rho(a) == rho(b), k <= q - rho(b) zeros, positives all equal
  strict,
};

MuirheadCase muirhead_equality_classify(const Partition& a, const Partition& b,
                                        const VariableVector& x);

// Evaluates the weighted inequality the certificate implies:
//   sum_{n in N} (-omega_n) Sigma_n <= sum_{p in P} omega_p Sigma_p,
// checking every intermediate step exactly: the left side equals
// sum tau_np Sigma_n (row sums), each tau_np Sigma_n <= tau_np Sigma_p, and
// sum tau_np Sigma_p equals the right side (column sums).
bool verify_master_inequality(const WeightTable& table, const MatchingCertificate& cert,
                              const VariableVector& x, std::string* reason = nullptr);

// Checks sum_{zeta in W_l} |pi_zeta(f)|^2 == (|W_l|/q!) Sigma_l, where
// restricted_sum is the left side computed independently by the brute-force
// field oracle and x holds the squared moduli of f.
bool w_restricted_sum_identity(const Partition& l, const VariableVector& x,
                               const Rational& restricted_sum);

}  // namespace momext
