#include "momext/partitions.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace momext {

namespace {

void check_same_d(const Partition& a, const Partition& b) {
  if (a.d() != b.d())
    throw std::invalid_argument("partitions of different integers are not comparable");
}

BigInt factorial(long n) {
  BigInt f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return f;
}

}  // namespace

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  if (parts_.empty()) throw std::invalid_argument("empty partition");
  long sum = 0;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] < 0) throw std::invalid_argument("negative part in partition");
    if (i > 0 && parts_[i] > parts_[i - 1])
      throw std::invalid_argument("partition parts must be non-increasing");
    sum += parts_[i];
  }
  if (sum != static_cast<long>(parts_.size()))
    throw std::invalid_argument("partition parts must sum to d");
}

std::string Partition::str() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) os << ',';
    os << parts_[i];
  }
  os << ')';
  return os.str();
}

std::vector<Partition> enumerate_partitions(int d) {
  if (d < 2) throw std::invalid_argument("enumerate_partitions requires d >= 2");
  if (d > 64) throw std::invalid_argument("enumerate_partitions supports d <= 64");
  std::vector<Partition> out;
  std::vector<int> cur;
  // Descending-lex generation: largest first part first, recurse on the rest.
  auto gen = [&](auto&& self, int remaining, int max_part) -> void {
    if (remaining == 0) {
      std::vector<int> padded = cur;
      padded.resize(static_cast<std::size_t>(d), 0);
      out.emplace_back(std::move(padded));
      return;
    }
    for (int part = std::min(remaining, max_part); part >= 1; --part) {
      cur.push_back(part);
      self(self, remaining - part, part);
      cur.pop_back();
    }
  };
  gen(gen, d, d);
  return out;
}

bool dominance_leq(const Partition& a, const Partition& b) {
  check_same_d(a, b);
  long sa = 0, sb = 0;
  for (int i = 0; i < a.d(); ++i) {
    sa += a[static_cast<std::size_t>(i)];
    sb += b[static_cast<std::size_t>(i)];
    if (sa > sb) return false;
  }
  return true;
}

int rho(const Partition& l) {
  int count = 0;
  for (int part : l.parts())
    if (part > 0) ++count;
  return count;
}

BigInt ell_factorial(const Partition& l) {
  BigInt result = 1;
  for (int part : l.parts()) result *= factorial(part);
  return result;
}

BigInt multinomial_d(const Partition& l) {
  BigInt result = factorial(l.d());
  for (int part : l.parts())
    if (part > 1) mpz_divexact(result.get_mpz_t(), result.get_mpz_t(), factorial(part).get_mpz_t());
  return result;
}

BVector b_vector(const Partition& l, long q) {
  if (q <= l.d()) throw std::invalid_argument("b_vector requires q >= d+1");
  BVector b;
  b.q = q;
  b.counts.assign(static_cast<std::size_t>(l.d()) + 1, 0);
  for (int part : l.parts()) ++b.counts[static_cast<std::size_t>(part)];
  b.counts[0] += q - l.d();
  return b;
}

BigInt multinomial_q(const Partition& l, long q) {
  if (q <= l.d()) throw std::invalid_argument("multinomial_q requires q >= d+1");
  const int k = rho(l);
  BigInt result = 1;
  for (long i = 0; i < k; ++i) result *= (q - i);
  // multiplicities of equal positive parts
  std::vector<int> counts(static_cast<std::size_t>(l.d()) + 1, 0);
  for (int part : l.parts())
    if (part > 0) ++counts[static_cast<std::size_t>(part)];
  for (int c : counts)
    if (c > 1) mpz_divexact(result.get_mpz_t(), result.get_mpz_t(), factorial(c).get_mpz_t());
  return result;
}

double hardy_ramanujan_estimate(int d) {
  if (d < 2) throw std::invalid_argument("hardy_ramanujan_estimate requires d >= 2");
  const double x = static_cast<double>(d);
  return std::exp(M_PI * std::sqrt(2.0 * x / 3.0)) / (4.0 * x * std::sqrt(3.0));
}

PartitionPoset::PartitionPoset(int d) : d_(d), elements_(enumerate_partitions(d)) {
  if (d <= 20) {
    const std::size_t n = elements_.size();
    leq_table_.assign(n * n, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        leq_table_[i * n + j] = dominance_leq(elements_[i], elements_[j]) ? 1 : 0;
  }
}

bool PartitionPoset::leq(std::size_t a, std::size_t b) const {
  if (!leq_table_.empty()) return leq_table_[a * elements_.size() + b] != 0;
  return dominance_leq(elements_[a], elements_[b]);
}

std::optional<std::size_t> PartitionPoset::index_of(const Partition& l) const {
  // canonical order is descending lex, so binary search with reversed compare
  auto it = std::lower_bound(elements_.begin(), elements_.end(), l,
                             [](const Partition& x, const Partition& y) { return y < x; });
  if (it != elements_.end() && *it == l)
    return static_cast<std::size_t>(it - elements_.begin());
  return std::nullopt;
}

}  // namespace momext
