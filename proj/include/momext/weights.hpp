#pragma once

#include <cstdint>
#include <vector>

#include "momext/partitions.hpp"
#include "momext/rational.hpp"

namespace momext {

enum class WeightSign { negative, nonnegative };

struct WeightRow {
  BigInt w_card;    // |W_l|
  BigInt binom_d;   // binom(d, l)
  Rational omega;   // (A - binom) * binom * |W_l|
  WeightSign sign = WeightSign::nonnegative;
};

// The exact weight system for one (d,q): the constant A, one row per
// partition in canonical order, and the N/P split by the sign of omega.
// q is a free integer >= d+1; primality is not required (verifying every
// integer in a range subsumes all prime powers).
//
// build() recomputes omega along a second arithmetic route and verifies
// sum_l binom(d,l)|W_l| = q^d and sum_l omega_l = 0 before returning; a
// mismatch throws, since it can only mean an arithmetic bug.
class WeightTable {
 public:
  static WeightTable build(const PartitionPoset& poset, long q);
  static WeightTable build(int d, long q);

  int d() const { return d_; }
  long q() const { return q_; }
  const Rational& a() const { return a_; }
  const std::vector<WeightRow>& rows() const { return rows_; }
  const WeightRow& row(std::size_t i) const { return rows_[i]; }
  const std::vector<std::size_t>& n_indices() const { return n_indices_; }
  const std::vector<std::size_t>& p_indices() const { return p_indices_; }

  // A^(1/(2d)); display only, everything that matters stays rational.
  double sharp_constant() const;

  // FNV-1a over d, q, A and all omegas; ties a certificate to its table.
  std::uint64_t digest() const;

 private:
  WeightTable() = default;
  int d_ = 0;
  long q_ = 0;
  Rational a_;
  std::vector<WeightRow> rows_;
  std::vector<std::size_t> n_indices_;
  std::vector<std::size_t> p_indices_;
};

// |W_l| = binom(q, b(l)): the number of zeta whose polynomial P_zeta splits
// over F_q with multiplicity pattern l. Equals multinomial_q(l, q).
BigInt w_cardinality(const Partition& l, long q);

// A = q^{-d} sum_l binom(d,l)^2 |W_l|, in lowest terms. The conjectured sharp
// constant is A^(1/(2d)).
Rational constant_A(int d, long q);

// omega_l = (A - binom(d,l)) * binom(d,l) * |W_l|.
Rational omega(const Partition& l, const WeightTable& table);

}  // namespace momext
