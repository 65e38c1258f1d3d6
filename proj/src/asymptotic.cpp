#include "momext/asymptotic.hpp"

#include <cmath>
#include <stdexcept>

namespace momext {

namespace {

BigInt factorial(long n) {
  BigInt f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return f;
}

// partitions that can satisfy l! < 6: l! = 1, 2 or 4
bool is_small_factorial_shape(const Partition& l) {
  const BigInt lf = ell_factorial(l);
  return lf == 1 || lf == 2 || lf == 4;
}

}  // namespace

ThresholdReport threshold(int d) {
  if (d < 2) throw std::invalid_argument("threshold requires d >= 2");
  ThresholdReport report;
  report.d = d;
  const double x = static_cast<double>(d);
  double t = x * (x - 1.0) / (2.0 * std::log(6.0)) + (2.0 * x - 1.0) / 3.0;
  // outward rounding: nudge up by a few ulps before taking the ceiling
  t += 4.0 * t * 2.220446049250313e-16;
  report.threshold = t;
  report.ceil_threshold = static_cast<long>(std::ceil(t));
  report.q_search_max = report.ceil_threshold - 1;
  return report;
}

bool small_N_condition(const WeightTable& table, const PartitionPoset& poset) {
  // d!/A <= 6 as an exact comparison: d! <= 6A
  const Rational six_a = Rational(6) * table.a();
  if (Rational(factorial(table.d())) > six_a) return false;

  for (std::size_t i : table.n_indices()) {
    if (!is_small_factorial_shape(poset[i]))
      throw std::logic_error("small-N condition held but N contains " + poset[i].str());
    for (std::size_t j : table.p_indices())
      if (!poset.leq(i, j))
        throw std::logic_error("small-N condition held but " + poset[i].str() +
                               " is not below " + poset[j].str());
  }
  return true;
}

bool small_N_condition(int d, long q) {
  PartitionPoset poset(d);
  return small_N_condition(WeightTable::build(poset, q), poset);
}

bool large_q_chain_check(int d, long q) {
  if (d < 2) throw std::invalid_argument("large_q_chain_check requires d >= 2");
  const ThresholdReport report = threshold(d);
  const long q_min = std::max(static_cast<long>(2 * d), report.ceil_threshold);
  if (q < q_min)
    throw std::invalid_argument("large_q_chain_check requires q >= max(2d, ceil(threshold))");

  const double log6 = std::log(6.0);
  const double dd = static_cast<double>(d);
  const double qq = static_cast<double>(q);

  // quadratic in q
  const bool quadratic_ok =
      6.0 * log6 * qq * qq - 3.0 * dd * (dd - 1.0) * qq - (dd - 1.0) * dd * (2.0 * dd - 1.0) >= 0.0;

  // power-sum bound: log 6 >= sum_j (j/q) + (j/q)^2
  const double power_sum = dd * (dd - 1.0) / (2.0 * qq) + (dd - 1.0) * dd * (2.0 * dd - 1.0) / (6.0 * qq * qq);
  const bool power_sum_ok = log6 >= power_sum;

  // logarithmic form: log 6 >= -sum_j log(1 - j/q)
  double log_sum = 0.0;
  for (int j = 1; j < d; ++j) log_sum -= std::log1p(-static_cast<double>(j) / qq);
  const bool log_ok = log6 >= log_sum;

  // exact product form: 1/6 <= prod_j (1 - j/q), i.e. q^{d-1} <= 6 (q-1)...(q-d+1)
  BigInt qd1;
  mpz_ui_pow_ui(qd1.get_mpz_t(), static_cast<unsigned long>(q), static_cast<unsigned long>(d - 1));
  BigInt falling = 1;
  for (long j = 1; j < d; ++j) falling *= (q - j);
  const bool product_ok = qd1 <= 6 * falling;

  // single-term bound implies d!/A <= 6, re-checked exactly on the full sum
  const bool small_n_ok = small_N_condition(d, q);

  return quadratic_ok && power_sum_ok && log_ok && product_ok && small_n_ok;
}

}  // namespace momext
