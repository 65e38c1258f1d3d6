#include "momext/ff_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>

#include "momext/symmetric_sums.hpp"
#include "momext/weights.hpp"

namespace momext {

namespace {

constexpr double kCensusBudget = 1e7;     // passes over all zeta or all tuples
constexpr double kTransformBudget = 1e8;  // p^{d+1} character sums
constexpr double kExactBudget = 1e6;      // exact-rational brute force

double pow_double(long p, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= static_cast<double>(p);
  return r;
}

void require_census_budget(long p, int d, const char* what) {
  const double required = pow_double(p, d);
  if (required > kCensusBudget)
    throw BudgetExceeded(std::string(what) + " needs " + std::to_string(required) +
                             " field points, over the 1e7 budget",
                         required, kCensusBudget);
}

void require_transform_budget(long p, int d, const char* what) {
  const double required = pow_double(p, d + 1);
  if (required > kTransformBudget)
    throw BudgetExceeded(std::string(what) + " needs " + std::to_string(required) +
                             " character evaluations, over the 1e8 budget",
                         required, kTransformBudget);
}

void require_p_greater_d(const PrimeField& field, int d) {
  if (field.p() <= d)
    throw std::invalid_argument("field characteristic must exceed the dimension");
}

std::size_t flat_size(long p, int d) {
  std::size_t n = 1;
  for (int i = 0; i < d; ++i) n *= static_cast<std::size_t>(p);
  return n;
}

// all curve points gamma(t), t in [0,p)
std::vector<std::vector<long>> curve_table(const PrimeField& field, int d) {
  std::vector<std::vector<long>> table(static_cast<std::size_t>(field.p()));
  for (long t = 0; t < field.p(); ++t) table[static_cast<std::size_t>(t)] = curve_point(t, d, field);
  return table;
}

// walks all p^d parameter tuples keeping partial coordinate sums; visit runs
// at every leaf with the accumulated zeta
template <typename Visit>
void for_each_tuple(const PrimeField& field, int d, const std::vector<std::vector<long>>& curve,
                    Visit&& visit) {
  std::vector<long> sums(static_cast<std::size_t>(d), 0);
  auto rec = [&](auto&& self, int pos) -> void {
    if (pos == d) {
      visit(sums);
      return;
    }
    for (long t = 0; t < field.p(); ++t) {
      const std::vector<long>& point = curve[static_cast<std::size_t>(t)];
      for (int k = 0; k < d; ++k)
        sums[static_cast<std::size_t>(k)] = field.add(sums[static_cast<std::size_t>(k)], point[static_cast<std::size_t>(k)]);
      self(self, pos + 1);
      for (int k = 0; k < d; ++k)
        sums[static_cast<std::size_t>(k)] = field.sub(sums[static_cast<std::size_t>(k)], point[static_cast<std::size_t>(k)]);
    }
  };
  rec(rec, 0);
}

std::size_t flat_index(const std::vector<long>& zeta, long p) {
  std::size_t idx = 0;
  for (std::size_t k = zeta.size(); k > 0; --k)
    idx = idx * static_cast<std::size_t>(p) + static_cast<std::size_t>(zeta[k - 1]);
  return idx;
}

void decode_flat(std::size_t idx, long p, std::vector<long>& zeta) {
  for (std::size_t k = 0; k < zeta.size(); ++k) {
    zeta[k] = static_cast<long>(idx % static_cast<std::size_t>(p));
    idx /= static_cast<std::size_t>(p);
  }
}

}  // namespace

PrimeField::PrimeField(long p) : p_(p) {
  if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
}

bool PrimeField::is_prime(long n) {
  if (n < 2) return false;
  for (long f = 2; f * f <= n; ++f)
    if (n % f == 0) return false;
  return true;
}

long PrimeField::pow(long base, long exp) const {
  long result = 1;
  base %= p_;
  while (exp > 0) {
    if (exp & 1) result = mul(result, base);
    base = mul(base, base);
    exp >>= 1;
  }
  return result;
}

long PrimeField::inv(long a) const {
  if (a % p_ == 0) throw std::invalid_argument("inverse of zero");
  return pow(a, p_ - 2);
}

std::vector<long> curve_point(long t, int d, const PrimeField& field) {
  std::vector<long> coords(static_cast<std::size_t>(d));
  long power = 1;
  for (int j = 0; j < d; ++j) {
    power = field.mul(power, t);
    coords[static_cast<std::size_t>(j)] = power;
  }
  return coords;
}

long solution_count(const std::vector<long>& zeta, const PrimeField& field) {
  const int d = static_cast<int>(zeta.size());
  require_p_greater_d(field, d);
  require_census_budget(field.p(), d, "solution_count");
  const auto curve = curve_table(field, d);
  long count = 0;
  for_each_tuple(field, d, curve, [&](const std::vector<long>& sums) {
    if (sums == zeta) ++count;
  });
  return count;
}

std::optional<SplitPattern> classify_zeta_roots(const std::vector<long>& zeta,
                                                const PrimeField& field) {
  const int d = static_cast<int>(zeta.size());
  require_p_greater_d(field, d);

  // Newton: k s_k = sum_{i=1..k} (-1)^{i-1} s_{k-i} p_i, with p_i = zeta_i
  std::vector<long> s(static_cast<std::size_t>(d) + 1, 0);
  s[0] = 1;
  for (int k = 1; k <= d; ++k) {
    long acc = 0;
    for (int i = 1; i <= k; ++i) {
      long term = field.mul(s[static_cast<std::size_t>(k - i)], zeta[static_cast<std::size_t>(i - 1)]);
      if (i % 2 == 0) term = field.neg(term);
      acc = field.add(acc, term);
    }
    s[static_cast<std::size_t>(k)] = field.mul(acc, field.inv(k));
  }

  // P(X) = X^d - s_1 X^{d-1} + s_2 X^{d-2} - ... ; coeff[i] multiplies X^i
  std::vector<long> coeff(static_cast<std::size_t>(d) + 1, 0);
  coeff[static_cast<std::size_t>(d)] = 1;
  for (int k = 1; k <= d; ++k)
    coeff[static_cast<std::size_t>(d - k)] =
        k % 2 == 1 ? field.neg(s[static_cast<std::size_t>(k)]) : s[static_cast<std::size_t>(k)];

  int deg = d;
  std::vector<std::pair<int, long>> found;  // (multiplicity, root)
  for (long r = 0; r < field.p() && deg > 0; ++r) {
    int mult = 0;
    for (;;) {
      long value = 0;
      for (int i = deg; i >= 0; --i)
        value = field.add(field.mul(value, r), coeff[static_cast<std::size_t>(i)]);
      if (value != 0) break;
      // synthetic division by (X - r)
      std::vector<long> quotient(static_cast<std::size_t>(deg), 0);
      quotient[static_cast<std::size_t>(deg - 1)] = coeff[static_cast<std::size_t>(deg)];
      for (int i = deg - 2; i >= 0; --i)
        quotient[static_cast<std::size_t>(i)] =
            field.add(coeff[static_cast<std::size_t>(i + 1)],
                      field.mul(r, quotient[static_cast<std::size_t>(i + 1)]));
      for (int i = 0; i < deg; ++i) coeff[static_cast<std::size_t>(i)] = quotient[static_cast<std::size_t>(i)];
      --deg;
      ++mult;
      if (deg == 0) break;
    }
    if (mult > 0) found.emplace_back(mult, r);
  }
  if (deg != 0) return std::nullopt;

  // multiplicity pattern non-increasing; ties broken by root value
  std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  });
  std::vector<int> parts(static_cast<std::size_t>(d), 0);
  std::vector<long> roots;
  for (std::size_t i = 0; i < found.size(); ++i) {
    parts[i] = found[i].first;
    roots.push_back(found[i].second);
  }
  return SplitPattern{Partition(std::move(parts)), std::move(roots)};
}

std::optional<Partition> classify_zeta(const std::vector<long>& zeta, const PrimeField& field) {
  auto pattern = classify_zeta_roots(zeta, field);
  if (!pattern) return std::nullopt;
  return std::move(pattern->partition);
}

std::vector<std::int32_t> solution_census(int d, const PrimeField& field) {
  require_p_greater_d(field, d);
  require_census_budget(field.p(), d, "solution_census");
  const auto curve = curve_table(field, d);
  std::vector<std::int32_t> census(flat_size(field.p(), d), 0);
  for_each_tuple(field, d, curve, [&](const std::vector<long>& sums) {
    ++census[flat_index(sums, field.p())];
  });
  return census;
}

std::vector<long> w_counts_bruteforce(const PartitionPoset& poset, const PrimeField& field,
                                      int threads) {
  const int d = poset.d();
  require_p_greater_d(field, d);
  require_census_budget(field.p(), d, "w_counts_bruteforce");
  const std::size_t total = flat_size(field.p(), d);
  const int workers = std::max(1, std::min(threads, 16));

  std::vector<std::vector<long>> tallies(static_cast<std::size_t>(workers),
                                         std::vector<long>(poset.size(), 0));
  auto work = [&](int w) {
    const std::size_t lo = total * static_cast<std::size_t>(w) / static_cast<std::size_t>(workers);
    const std::size_t hi = total * static_cast<std::size_t>(w + 1) / static_cast<std::size_t>(workers);
    std::vector<long> zeta(static_cast<std::size_t>(d));
    for (std::size_t idx = lo; idx < hi; ++idx) {
      decode_flat(idx, field.p(), zeta);
      auto pattern = classify_zeta_roots(zeta, field);
      if (!pattern) continue;
      auto pos = poset.index_of(pattern->partition);
      if (!pos) throw std::logic_error("classified partition missing from poset");
      ++tallies[static_cast<std::size_t>(w)][*pos];
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (std::thread& t : pool) t.join();
  }

  std::vector<long> counts(poset.size(), 0);
  for (const auto& tally : tallies)
    for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += tally[i];
  return counts;
}

std::vector<std::complex<double>> extension_transform(const FrequencyFunction& f,
                                                      const PrimeField& field, int d) {
  require_p_greater_d(field, d);
  require_transform_budget(field.p(), d, "extension_transform");
  const long p = field.p();
  if (static_cast<long>(f.size()) != p)
    throw std::invalid_argument("frequency function must have one value per curve parameter");

  std::vector<std::complex<double>> unit(static_cast<std::size_t>(p));
  for (long k = 0; k < p; ++k) {
    const double angle = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(p);
    unit[static_cast<std::size_t>(k)] = {std::cos(angle), std::sin(angle)};
  }
  const auto curve = curve_table(field, d);

  const std::size_t total = flat_size(p, d);
  std::vector<std::complex<double>> out(total);
  std::vector<long> x(static_cast<std::size_t>(d), 0);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::complex<double> acc = 0.0;
    for (long t = 0; t < p; ++t) {
      long dot = 0;
      const std::vector<long>& point = curve[static_cast<std::size_t>(t)];
      for (int j = 0; j < d; ++j)
        dot = field.add(dot, field.mul(x[static_cast<std::size_t>(j)], point[static_cast<std::size_t>(j)]));
      acc += f[static_cast<std::size_t>(t)] * unit[static_cast<std::size_t>(dot)];
    }
    out[idx] = acc / static_cast<double>(p);
    // odometer step
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (++x[j] < p) break;
      x[j] = 0;
    }
  }
  return out;
}

double norm_ratio(const FrequencyFunction& f, const PrimeField& field, int d) {
  double l2 = 0.0;
  for (const auto& v : f) l2 += std::norm(v);
  if (l2 == 0.0) throw std::invalid_argument("norm_ratio requires a nonzero f");

  const auto transform = extension_transform(f, field, d);
  double l2d = 0.0;
  for (const auto& v : transform) {
    const double n2 = std::norm(v);
    double power = 1.0;
    for (int i = 0; i < d; ++i) power *= n2;
    l2d += power;
  }
  const double numerator = std::pow(l2d, 1.0 / (2.0 * d));
  const double denominator = std::sqrt(l2 / static_cast<double>(field.p()));
  return numerator / denominator;
}

CombinatorialLhs combinatorial_lhs(const FrequencyFunction& f, const PartitionPoset& poset,
                                   const PrimeField& field) {
  const int d = poset.d();
  const long p = field.p();
  require_p_greater_d(field, d);
  require_census_budget(p, d, "combinatorial_lhs");
  if (static_cast<long>(f.size()) != p)
    throw std::invalid_argument("frequency function must have one value per curve parameter");

  CombinatorialLhs out{0.0, 0.0, 0.0};
  const auto curve = curve_table(field, d);

  // route 1: accumulate sum of products per zeta over all curve tuples
  {
    std::vector<std::complex<double>> accum(flat_size(p, d), 0.0);
    std::vector<long> sums(static_cast<std::size_t>(d), 0);
    std::complex<double> prod = 1.0;
    auto rec = [&](auto&& self, int pos) -> void {
      if (pos == d) {
        accum[flat_index(sums, p)] += prod;
        return;
      }
      const std::complex<double> saved = prod;
      for (long t = 0; t < p; ++t) {
        const std::vector<long>& point = curve[static_cast<std::size_t>(t)];
        for (int k = 0; k < d; ++k)
          sums[static_cast<std::size_t>(k)] = field.add(sums[static_cast<std::size_t>(k)], point[static_cast<std::size_t>(k)]);
        prod = saved * f[static_cast<std::size_t>(t)];
        self(self, pos + 1);
        for (int k = 0; k < d; ++k)
          sums[static_cast<std::size_t>(k)] = field.sub(sums[static_cast<std::size_t>(k)], point[static_cast<std::size_t>(k)]);
      }
      prod = saved;
    };
    rec(rec, 0);
    for (const auto& v : accum) out.bruteforce += std::norm(v);
  }

  // route 2: per-partition formula via polynomial factoring
  {
    std::vector<double> binom(poset.size());
    for (std::size_t i = 0; i < poset.size(); ++i) binom[i] = multinomial_d(poset[i]).get_d();
    std::vector<long> zeta(static_cast<std::size_t>(d));
    const std::size_t total = flat_size(p, d);
    for (std::size_t idx = 0; idx < total; ++idx) {
      decode_flat(idx, p, zeta);
      auto pattern = classify_zeta_roots(zeta, field);
      if (!pattern) continue;
      std::complex<double> pi = 1.0;
      for (std::size_t i = 0; i < pattern->roots.size(); ++i) {
        const int mult = pattern->partition[i];
        const std::complex<double> value = f[static_cast<std::size_t>(pattern->roots[i])];
        for (int m = 0; m < mult; ++m) pi *= value;
      }
      const std::size_t pos = *poset.index_of(pattern->partition);
      out.partition_formula += binom[pos] * binom[pos] * std::norm(pi);
    }
  }

  // route 3: p^d times the 2d-th power of the transform norm
  {
    const auto transform = extension_transform(f, field, d);
    double l2d = 0.0;
    for (const auto& v : transform) {
      const double n2 = std::norm(v);
      double power = 1.0;
      for (int i = 0; i < d; ++i) power *= n2;
      l2d += power;
    }
    out.from_transform = pow_double(p, d) * l2d;
  }
  return out;
}

CombinatorialLhsExact combinatorial_lhs_exact(const std::vector<Rational>& f,
                                              const PartitionPoset& poset,
                                              const PrimeField& field) {
  const int d = poset.d();
  const long p = field.p();
  require_p_greater_d(field, d);
  const double required = pow_double(p, d);
  if (required > kExactBudget)
    throw BudgetExceeded("combinatorial_lhs_exact needs " + std::to_string(required) +
                             " field points, over the 1e6 budget",
                         required, kExactBudget);
  if (static_cast<long>(f.size()) != p)
    throw std::invalid_argument("frequency function must have one value per curve parameter");

  CombinatorialLhsExact out{Rational(0), Rational(0)};
  const auto curve = curve_table(field, d);

  {
    std::vector<Rational> accum(flat_size(p, d), Rational(0));
    std::vector<long> sums(static_cast<std::size_t>(d), 0);
    auto rec = [&](auto&& self, int pos, const Rational& prod) -> void {
      if (pos == d) {
        accum[flat_index(sums, p)] += prod;
        return;
      }
      for (long t = 0; t < p; ++t) {
        const std::vector<long>& point = curve[static_cast<std::size_t>(t)];
        for (int k = 0; k < d; ++k)
          sums[static_cast<std::size_t>(k)] = field.add(sums[static_cast<std::size_t>(k)], point[static_cast<std::size_t>(k)]);
        self(self, pos + 1, Rational(prod * f[static_cast<std::size_t>(t)]));
        for (int k = 0; k < d; ++k)
          sums[static_cast<std::size_t>(k)] = field.sub(sums[static_cast<std::size_t>(k)], point[static_cast<std::size_t>(k)]);
      }
    };
    rec(rec, 0, Rational(1));
    for (const Rational& v : accum) out.bruteforce += v * v;
    out.bruteforce.canonicalize();
  }

  {
    std::vector<Rational> x(f.size());
    for (std::size_t t = 0; t < f.size(); ++t) x[t] = f[t] * f[t];
    std::vector<long> zeta(static_cast<std::size_t>(d));
    const std::size_t total = flat_size(p, d);
    for (std::size_t idx = 0; idx < total; ++idx) {
      decode_flat(idx, p, zeta);
      auto pattern = classify_zeta_roots(zeta, field);
      if (!pattern) continue;
      Rational pi = 1;
      for (std::size_t i = 0; i < pattern->roots.size(); ++i)
        for (int m = 0; m < pattern->partition[i]; ++m)
          pi *= x[static_cast<std::size_t>(pattern->roots[i])];
      const BigInt binom = multinomial_d(pattern->partition);
      out.partition_formula += Rational(binom * binom) * pi;
    }
    out.partition_formula.canonicalize();
  }
  return out;
}

std::vector<Rational> w_restricted_sums(const PartitionPoset& poset, const PrimeField& field,
                                        const std::vector<Rational>& x) {
  const int d = poset.d();
  const long p = field.p();
  require_p_greater_d(field, d);
  require_census_budget(p, d, "w_restricted_sums");
  if (static_cast<long>(x.size()) != p)
    throw std::invalid_argument("need one squared modulus per curve parameter");

  std::vector<Rational> sums(poset.size(), Rational(0));
  std::vector<long> zeta(static_cast<std::size_t>(d));
  const std::size_t total = flat_size(p, d);
  for (std::size_t idx = 0; idx < total; ++idx) {
    decode_flat(idx, p, zeta);
    auto pattern = classify_zeta_roots(zeta, field);
    if (!pattern) continue;
    Rational term = 1;
    for (std::size_t i = 0; i < pattern->roots.size(); ++i)
      for (int m = 0; m < pattern->partition[i]; ++m)
        term *= x[static_cast<std::size_t>(pattern->roots[i])];
    sums[*poset.index_of(pattern->partition)] += term;
  }
  for (Rational& s : sums) s.canonicalize();
  return sums;
}

bool OracleReport::all_pass() const {
  for (const OracleCheck& check : checks)
    if (!check.pass) return false;
  return true;
}

OracleReport run_oracle_battery(int d, long p, const OracleConfig& config) {
  const PrimeField field(p);
  require_p_greater_d(field, d);
  require_census_budget(p, d, "oracle battery");
  require_transform_budget(p, d, "oracle battery");

  const PartitionPoset poset(d);
  const WeightTable table = WeightTable::build(poset, p);
  const double sharp = table.sharp_constant();
  const double tol = config.tol;

  OracleReport report;
  report.d = d;
  report.p = p;
  std::mt19937_64 rng(config.seed);

  auto add_check = [&](const std::string& name, bool pass, const std::string& detail) {
    report.checks.push_back({name, pass, detail});
  };
  auto fmt = [](double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
  };

  // ---- census of |W_l| against the counting formula
  report.w_count_bruteforce = w_counts_bruteforce(poset, field, config.threads);
  bool census_ok = true;
  std::string census_detail;
  BigInt weighted_total = 0;
  for (std::size_t i = 0; i < poset.size(); ++i) {
    report.w_count_formula.push_back(table.row(i).w_card.get_str());
    if (table.row(i).w_card != report.w_count_bruteforce[i]) {
      census_ok = false;
      if (census_detail.empty())
        census_detail = "mismatch at " + poset[i].str() + ": counted " +
                        std::to_string(report.w_count_bruteforce[i]) + ", formula " +
                        table.row(i).w_card.get_str();
    }
    weighted_total += table.row(i).binom_d * report.w_count_bruteforce[i];
  }
  if (census_ok) census_detail = std::to_string(poset.size()) + " partitions match";
  add_check("w_counts_match_formula", census_ok, census_detail);

  BigInt qd;
  mpz_ui_pow_ui(qd.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(d));
  add_check("census_total_identity", weighted_total == qd,
            "sum binom * |W| = " + weighted_total.get_str() + ", p^d = " + qd.get_str());

  // ---- every convolution value equals the multiplicity factor of its pattern
  {
    const auto census = solution_census(d, field);
    bool ok = true;
    std::string detail = "all " + std::to_string(census.size()) + " points agree";
    std::vector<long> zeta(static_cast<std::size_t>(d));
    std::vector<long> binom_of(poset.size());
    for (std::size_t i = 0; i < poset.size(); ++i) binom_of[i] = multinomial_d(poset[i]).get_si();
    for (std::size_t idx = 0; idx < census.size() && ok; ++idx) {
      decode_flat(idx, p, zeta);
      const auto pattern = classify_zeta(zeta, field);
      const long expected = pattern ? binom_of[*poset.index_of(*pattern)] : 0;
      if (census[idx] != expected) {
        ok = false;
        detail = "zeta #" + std::to_string(idx) + ": counted " + std::to_string(census[idx]) +
                 ", expected " + std::to_string(expected);
      }
    }
    add_check("solution_counts_equal_multiplicity_factor", ok, detail);
  }

  // ---- character orthogonality at random nonzero frequencies
  {
    std::uniform_int_distribution<long> coord(0, p - 1);
    const std::size_t total = flat_size(p, d);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<long> v(static_cast<std::size_t>(d));
      do {
        for (auto& c : v) c = coord(rng);
      } while (std::all_of(v.begin(), v.end(), [](long c) { return c == 0; }));
      std::complex<double> sum = 0.0;
      std::vector<long> x(static_cast<std::size_t>(d), 0);
      for (std::size_t idx = 0; idx < total; ++idx) {
        long dot = 0;
        for (int j = 0; j < d; ++j)
          dot = field.add(dot, field.mul(x[static_cast<std::size_t>(j)], v[static_cast<std::size_t>(j)]));
        const double angle = 2.0 * M_PI * static_cast<double>(dot) / static_cast<double>(p);
        sum += std::complex<double>(std::cos(angle), std::sin(angle));
        for (std::size_t j = 0; j < x.size(); ++j) {
          if (++x[j] < p) break;
          x[j] = 0;
        }
      }
      worst = std::max(worst, std::abs(sum));
    }
    add_check("character_orthogonality", worst <= tol * pow_double(p, d),
              "max |sum| = " + fmt(worst) + " over 100 nonzero frequencies");
  }

  std::uniform_real_distribution<double> phase(0.0, 2.0 * M_PI);
  std::uniform_real_distribution<double> modulus(0.5, 1.5);
  auto random_phases_f = [&](double fixed_modulus) {
    FrequencyFunction f(static_cast<std::size_t>(p));
    for (auto& v : f) v = std::polar(fixed_modulus, phase(rng));
    return f;
  };

  // ---- Plancherel consistency
  {
    double worst = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
      FrequencyFunction f(static_cast<std::size_t>(p));
      for (auto& v : f) v = std::polar(modulus(rng), phase(rng));
      const auto transform = extension_transform(f, field, d);
      double lhs = 0.0;
      for (const auto& v : transform) lhs += std::norm(v);
      double l2 = 0.0;
      for (const auto& v : f) l2 += std::norm(v);
      const double rhs = pow_double(p, d - 2) * l2;
      worst = std::max(worst, std::abs(lhs - rhs) / rhs);
    }
    add_check("plancherel_consistency", worst <= tol, "max relative error " + fmt(worst));
  }

  // ---- sharpness: constants attain the bound, non-constant moduli fall short
  {
    const FrequencyFunction ones(static_cast<std::size_t>(p), 1.0);
    const double ones_ratio = norm_ratio(ones, field, d);
    report.constant_ratio_error = std::abs(ones_ratio - sharp);
    report.experiments.push_back({"f == 1", ones_ratio, sharp, sharp - ones_ratio});
    add_check("constant_function_attains_bound", report.constant_ratio_error <= tol,
              "|ratio - A^(1/2d)| = " + fmt(report.constant_ratio_error));

    double worst = 0.0;
    double worst_ratio = sharp;
    for (int trial = 0; trial < config.constant_modulus_trials; ++trial) {
      const double ratio = norm_ratio(random_phases_f(1.0), field, d);
      if (std::abs(ratio - sharp) > worst) worst_ratio = ratio;
      worst = std::max(worst, std::abs(ratio - sharp));
    }
    report.max_constant_modulus_error = worst;
    report.experiments.push_back({"constant modulus, worst of " +
                                      std::to_string(config.constant_modulus_trials) + " samples",
                                  worst_ratio, sharp, sharp - worst_ratio});
    add_check("constant_modulus_attains_bound", worst <= tol,
              "max |ratio - A^(1/2d)| = " + fmt(worst) + " over " +
                  std::to_string(config.constant_modulus_trials) + " samples");

    double min_margin = std::numeric_limits<double>::infinity();
    for (int trial = 0; trial < config.nonconstant_trials; ++trial) {
      FrequencyFunction f(static_cast<std::size_t>(p));
      double lo, hi;
      do {
        lo = std::numeric_limits<double>::infinity();
        hi = 0.0;
        for (auto& v : f) {
          const double m = modulus(rng);
          lo = std::min(lo, m);
          hi = std::max(hi, m);
          v = std::polar(m, phase(rng));
        }
      } while (hi - lo < 0.3);
      min_margin = std::min(min_margin, sharp - norm_ratio(f, field, d));
    }
    report.min_nonconstant_margin = min_margin;
    report.experiments.push_back({"non-constant modulus, closest of " +
                                      std::to_string(config.nonconstant_trials) + " samples",
                                  sharp - min_margin, sharp, min_margin});
    add_check("nonconstant_modulus_strictly_below", min_margin > tol,
              "min margin = " + fmt(min_margin) + " over " +
                  std::to_string(config.nonconstant_trials) + " samples");
  }

  // ---- three-way agreement of the combinatorial left-hand side
  {
    double worst = 0.0;
    for (int trial = 0; trial < 3; ++trial) {
      FrequencyFunction f(static_cast<std::size_t>(p));
      for (auto& v : f) v = std::polar(modulus(rng), phase(rng));
      const CombinatorialLhs lhs = combinatorial_lhs(f, poset, field);
      const double scale = std::max(1.0, std::abs(lhs.bruteforce));
      worst = std::max(worst, std::abs(lhs.bruteforce - lhs.partition_formula) / scale);
      worst = std::max(worst, std::abs(lhs.bruteforce - lhs.from_transform) / scale);
    }
    bool exact_ok = true;
    if (pow_double(p, d) <= kExactBudget) {
      std::uniform_int_distribution<int> num(0, 16), den(1, 16);
      std::vector<Rational> f(static_cast<std::size_t>(p));
      for (auto& v : f) {
        v = Rational(num(rng), den(rng));
        v.canonicalize();
      }
      const CombinatorialLhsExact exact = combinatorial_lhs_exact(f, poset, field);
      exact_ok = exact.bruteforce == exact.partition_formula;
    }
    add_check("combinatorial_lhs_three_way", worst <= tol && exact_ok,
              "max relative spread " + fmt(worst) +
                  (exact_ok ? ", exact routes equal" : ", exact routes DIFFER"));
  }

  // ---- restricted-sum identity per partition
  {
    std::uniform_int_distribution<int> num(0, 16), den(1, 16);
    std::vector<Rational> x(static_cast<std::size_t>(p));
    for (auto& v : x) {
      v = Rational(num(rng), den(rng));
      v.canonicalize();
    }
    const auto sums = w_restricted_sums(poset, field, x);
    const VariableVector vars{std::vector<Rational>(x)};
    bool ok = true;
    std::string detail = "holds for all " + std::to_string(poset.size()) + " partitions";
    for (std::size_t i = 0; i < poset.size() && ok; ++i) {
      if (!w_restricted_sum_identity(poset[i], vars, sums[i])) {
        ok = false;
        detail = "fails at " + poset[i].str();
      }
    }
    add_check("w_restricted_sum_identity", ok, detail);
  }

  return report;
}

}  // namespace momext
