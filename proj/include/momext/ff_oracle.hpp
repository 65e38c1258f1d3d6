#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "momext/partitions.hpp"
#include "momext/rational.hpp"

namespace momext {

// Thrown when a requested brute-force pass would exceed the desk-scale
// budgets (p^d <= 1e7 for censuses, p^{d+1} <= 1e8 for transforms).
struct BudgetExceeded : std::runtime_error {
  BudgetExceeded(const std::string& what, double required, double limit)
      : std::runtime_error(what), required(required), limit(limit) {}
  double required;
  double limit;
};

// Arithmetic mod a prime p. All oracle operations additionally require p > d
// so the Newton recursion can divide by 1..d.
class PrimeField {
 public:
  explicit PrimeField(long p);  // throws if p is not prime

  long p() const { return p_; }
  long add(long a, long b) const {
    long s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  long sub(long a, long b) const {
    long s = a - b;
    return s < 0 ? s + p_ : s;
  }
  long mul(long a, long b) const { return (a * b) % p_; }
  long neg(long a) const { return a == 0 ? 0 : p_ - a; }
  long pow(long base, long exp) const;
  long inv(long a) const;  // a != 0

  static bool is_prime(long n);

 private:
  long p_;
};

// (t, t^2, ..., t^d)
std::vector<long> curve_point(long t, int d, const PrimeField& field);

// Number of (t_1,...,t_d) in F_p^d whose power sums equal zeta, by exhaustive
// enumeration of all p^d tuples.
long solution_count(const std::vector<long>& zeta, const PrimeField& field);

struct SplitPattern {
  Partition partition;      // root multiplicities, non-increasing, padded to d
  std::vector<long> roots;  // distinct roots aligned with the positive parts
};

// Recovers the elementary symmetric values from the power sums via Newton's
// recursion, builds P_zeta, and factors it by trial roots over F_p. Returns
// the multiplicity pattern when P_zeta splits completely, nullopt otherwise.
std::optional<SplitPattern> classify_zeta_roots(const std::vector<long>& zeta,
                                                const PrimeField& field);
std::optional<Partition> classify_zeta(const std::vector<long>& zeta, const PrimeField& field);

// solution_count for every zeta at once: one pass over all p^d parameter
// tuples, tallied into a flat array indexed by zeta_1 + zeta_2 p + ...
std::vector<std::int32_t> solution_census(int d, const PrimeField& field);

// |W_l| for every partition by classifying all p^d zetas. Deterministic for
// any thread count.
std::vector<long> w_counts_bruteforce(const PartitionPoset& poset, const PrimeField& field,
                                      int threads = 1);

// f on the curve, indexed by the parameter t in [0, p).
using FrequencyFunction = std::vector<std::complex<double>>;

// (f sigma)^vee over all of F_p^d: (1/p) sum_t f(t) e(x . gamma(t)) with
// e(y) = exp(2 pi i y / p).
std::vector<std::complex<double>> extension_transform(const FrequencyFunction& f,
                                                      const PrimeField& field, int d);

// || (f sigma)^vee ||_{L^{2d}(counting)} / ||f||_{L^2(sigma)}; rejects f == 0.
double norm_ratio(const FrequencyFunction& f, const PrimeField& field, int d);

// sum_zeta | sum_{tuples summing to zeta} prod f |^2 computed three ways:
// brute force over curve tuples, the per-partition formula via polynomial
// factoring, and p^d ||(f sigma)^vee||_{2d}^{2d} from the transform.
struct CombinatorialLhs {
  double bruteforce;
  double partition_formula;
  double from_transform;
};
CombinatorialLhs combinatorial_lhs(const FrequencyFunction& f, const PartitionPoset& poset,
                                   const PrimeField& field);

// The two combinatorial routes in exact arithmetic, for real rational f.
struct CombinatorialLhsExact {
  Rational bruteforce;
  Rational partition_formula;
};
CombinatorialLhsExact combinatorial_lhs_exact(const std::vector<Rational>& f,
                                              const PartitionPoset& poset,
                                              const PrimeField& field);

// Per-partition sum_{zeta in W_l} prod_j x_{r_j}^{l_j} with x the squared
// moduli of f; the brute-force side of the restricted-sum identity.
std::vector<Rational> w_restricted_sums(const PartitionPoset& poset, const PrimeField& field,
                                        const std::vector<Rational>& x);

struct OracleCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct RatioExperiment {
  std::string description;
  double ratio = 0.0;
  double bound = 0.0;  // A^(1/2d)
  double slack = 0.0;  // bound - ratio
};

struct OracleReport {
  int d = 0;
  long p = 0;
  std::vector<OracleCheck> checks;
  std::vector<long> w_count_bruteforce;       // per canonical partition index
  std::vector<std::string> w_count_formula;   // same, as decimal strings
  std::vector<RatioExperiment> experiments;   // representative norm-ratio samples
  double constant_ratio_error = 0.0;          // |ratio(f==1) - A^{1/2d}|
  double max_constant_modulus_error = 0.0;
  double min_nonconstant_margin = 0.0;
  bool all_pass() const;
};

struct OracleConfig {
  int constant_modulus_trials = 100;
  int nonconstant_trials = 1000;
  std::uint64_t seed = 1;
  double tol = 1e-9;
  int threads = 1;
};

// The full battery: census checks, solution-count law, character
// orthogonality, Plancherel consistency, sharpness sampling, combinatorial
// three-way agreement, and the restricted-sum identity.
OracleReport run_oracle_battery(int d, long p, const OracleConfig& config);

}  // namespace momext
