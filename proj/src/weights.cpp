#include "momext/weights.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace momext {

namespace {

BigInt pow_int(long base, int exp) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(exp));
  return r;
}

std::uint64_t fnv1a(std::uint64_t h, const std::string& s) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace

BigInt w_cardinality(const Partition& l, long q) { return multinomial_q(l, q); }

Rational constant_A(int d, long q) {
  return WeightTable::build(d, q).a();
}

Rational omega(const Partition& l, const WeightTable& table) {
  const BigInt binom = multinomial_d(l);
  const BigInt w = w_cardinality(l, table.q());
  Rational value = (table.a() - Rational(binom)) * Rational(binom) * Rational(w);
  value.canonicalize();
  return value;
}

WeightTable WeightTable::build(int d, long q) { return build(PartitionPoset(d), q); }

WeightTable WeightTable::build(const PartitionPoset& poset, long q) {
  const int d = poset.d();
  if (d < 2) throw std::invalid_argument("weight table requires d >= 2");
  if (q <= d) throw std::invalid_argument("weight table requires q >= d+1");

  WeightTable table;
  table.d_ = d;
  table.q_ = q;
  table.rows_.resize(poset.size());

  const BigInt qd = pow_int(q, d);
  BigInt sum_cw = 0;   // sum binom * |W|
  BigInt sum_c2w = 0;  // sum binom^2 * |W|
  for (std::size_t i = 0; i < poset.size(); ++i) {
    WeightRow& row = table.rows_[i];
    row.binom_d = multinomial_d(poset[i]);
    row.w_card = w_cardinality(poset[i], q);
    sum_cw += row.binom_d * row.w_card;
    sum_c2w += row.binom_d * row.binom_d * row.w_card;
  }
  if (sum_cw != qd)
    throw std::logic_error("weight table identity sum binom(d,l)|W_l| = q^d failed at d=" +
                           std::to_string(d) + " q=" + std::to_string(q));

  table.a_ = Rational(sum_c2w, qd);
  table.a_.canonicalize();

  BigInt d_factorial;
  mpz_fac_ui(d_factorial.get_mpz_t(), static_cast<unsigned long>(d));

  Rational omega_sum = 0;
  for (std::size_t i = 0; i < poset.size(); ++i) {
    WeightRow& row = table.rows_[i];
    // route 1: straight from the definition, in rational arithmetic
    Rational w1 = (table.a_ - Rational(row.binom_d)) * Rational(row.binom_d) * Rational(row.w_card);
    w1.canonicalize();
    // route 2: integer numerator over q^d, reduced at the end
    Rational w2(row.binom_d * row.w_card * (sum_c2w - row.binom_d * qd), qd);
    w2.canonicalize();
    if (w1 != w2)
      throw std::logic_error("weight table double-entry omega check failed at d=" +
                             std::to_string(d) + " q=" + std::to_string(q) + " row " +
                             poset[i].str());
    row.omega = w1;
    row.sign = sgn(row.omega) < 0 ? WeightSign::negative : WeightSign::nonnegative;
    omega_sum += row.omega;
    // sign criterion: omega < 0 iff l! * A < d!
    const bool crit = Rational(ell_factorial(poset[i])) * table.a_ < Rational(d_factorial);
    if (crit != (row.sign == WeightSign::negative))
      throw std::logic_error("weight sign criterion failed at d=" + std::to_string(d) +
                             " q=" + std::to_string(q) + " row " + poset[i].str());
    if (row.sign == WeightSign::negative)
      table.n_indices_.push_back(i);
    else
      table.p_indices_.push_back(i);
  }
  if (omega_sum != 0)
    throw std::logic_error("weight table identity sum omega = 0 failed at d=" +
                           std::to_string(d) + " q=" + std::to_string(q));
  return table;
}

double WeightTable::sharp_constant() const {
  return std::pow(a_.get_d(), 1.0 / (2.0 * d_));
}

std::uint64_t WeightTable::digest() const {
  std::uint64_t h = 1469598103934665603ULL;
  h = fnv1a(h, std::to_string(d_));
  h = fnv1a(h, "|");
  h = fnv1a(h, std::to_string(q_));
  h = fnv1a(h, "|");
  h = fnv1a(h, rational_str(a_));
  for (const WeightRow& row : rows_) {
    h = fnv1a(h, "|");
    h = fnv1a(h, rational_str(row.omega));
  }
  return h;
}

}  // namespace momext
