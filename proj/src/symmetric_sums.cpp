#include "momext/symmetric_sums.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace momext {

namespace {

BigInt factorial(long n) {
  BigInt f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return f;
}

// distinct positive exponents of l with multiplicities, largest exponent first
std::vector<std::pair<int, int>> exponent_groups(const Partition& l) {
  std::vector<std::pair<int, int>> groups;
  for (int part : l.parts()) {
    if (part == 0) break;
    if (!groups.empty() && groups.back().first == part)
      ++groups.back().second;
    else
      groups.emplace_back(part, 1);
  }
  return groups;
}

}  // namespace

VariableVector::VariableVector(std::vector<Rational> values) : values_(std::move(values)) {
  if (values_.empty()) throw std::invalid_argument("empty variable vector");
  for (const Rational& v : values_)
    if (sgn(v) < 0) throw std::invalid_argument("variable vector entries must be non-negative");
}

std::size_t VariableVector::zero_count() const {
  std::size_t count = 0;
  for (const Rational& v : values_)
    if (sgn(v) == 0) ++count;
  return count;
}

bool VariableVector::all_equal() const {
  for (std::size_t i = 1; i < values_.size(); ++i)
    if (values_[i] != values_[0]) return false;
  return true;
}

Rational sigma_ell(const Partition& l, const VariableVector& x) {
  const long q = static_cast<long>(x.size());
  if (q < l.d()) throw std::invalid_argument("sigma_ell requires q >= d");

  const auto groups = exponent_groups(l);
  const int r = rho(l);

  // Sub-multisets of the positive exponents, indexed in mixed radix over the
  // group multiplicities. f[s] accumulates, over assignments of the exponents
  // in s to distinct variables seen so far, the corresponding monomials; one
  // knapsack-style pass per variable keeps every variable used at most once.
  std::size_t state_count = 1;
  std::vector<std::size_t> radix(groups.size());
  for (std::size_t g = 0; g < groups.size(); ++g) {
    radix[g] = state_count;
    state_count *= static_cast<std::size_t>(groups[g].second) + 1;
  }

  std::vector<int> state_size(state_count, 0);
  for (std::size_t s = 1; s < state_count; ++s)
    for (std::size_t g = 0; g < groups.size(); ++g)
      state_size[s] += static_cast<int>((s / radix[g]) %
                                        (static_cast<std::size_t>(groups[g].second) + 1));
  std::vector<std::size_t> order(state_count);
  for (std::size_t s = 0; s < state_count; ++s) order[s] = s;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return state_size[a] != state_size[b] ? state_size[a] > state_size[b] : a < b;
  });

  std::vector<Rational> f(state_count, Rational(0));
  f[0] = 1;
  std::vector<Rational> powers(groups.size());
  for (long i = 0; i < q; ++i) {
    // x_i^e for each distinct exponent e
    for (std::size_t g = 0; g < groups.size(); ++g) {
      Rational p = x[static_cast<std::size_t>(i)];
      for (int e = 1; e < groups[g].first; ++e) p *= x[static_cast<std::size_t>(i)];
      powers[g] = p;
    }
    for (std::size_t s : order) {
      if (s == 0) continue;
      for (std::size_t g = 0; g < groups.size(); ++g) {
        const std::size_t digit = (s / radix[g]) % (static_cast<std::size_t>(groups[g].second) + 1);
        if (digit == 0) continue;
        f[s] += powers[g] * f[s - radix[g]];
      }
    }
  }

  // ordered tuples overcount each assignment by the permutations of equal
  // exponents, and each tuple extends to (q - rho)! full permutations
  BigInt multiplier = factorial(q - r);
  for (const auto& [exp, count] : groups) multiplier *= factorial(count);
  Rational result = f[state_count - 1] * Rational(multiplier);
  result.canonicalize();
  return result;
}

MuirheadComparison muirhead_compare(const Partition& a, const Partition& b,
                                    const VariableVector& x) {
  if (!dominance_leq(a, b))
    throw std::invalid_argument("muirhead_compare requires a <= b in dominance order");
  MuirheadComparison cmp;
  cmp.lower = sigma_ell(a, x);
  cmp.upper = sigma_ell(b, x);
  cmp.equal = cmp.lower == cmp.upper;
  if (cmp.lower > cmp.upper)
    throw std::logic_error("symmetric-sum monotonicity violated; arithmetic bug");
  return cmp;
}

MuirheadCase muirhead_equality_classify(const Partition& a, const Partition& b,
                                        const VariableVector& x) {
  if (!dominance_leq(a, b))
    throw std::invalid_argument("muirhead_equality_classify requires a <= b");
  const std::size_t q = x.size();
  const std::size_t zeros = x.zero_count();

  if (a == b) return MuirheadCase::identical_partitions;
  if (x.all_equal()) return MuirheadCase::constant_variables;
  if (zeros >= q - static_cast<std::size_t>(rho(b)) + 1) return MuirheadCase::vanishing_support;

  if (rho(a) == rho(b) && zeros <= q - static_cast<std::size_t>(rho(b))) {
    const Rational* first_positive = nullptr;
    bool positives_equal = true;
    for (std::size_t i = 0; i < q; ++i) {
      if (sgn(x[i]) == 0) continue;
      if (!first_positive)
        first_positive = &x[i];
      else if (x[i] != *first_positive)
        positives_equal = false;
    }
    if (positives_equal) return MuirheadCase::matched_support;
  }
  return MuirheadCase::strict;
}

bool verify_master_inequality(const WeightTable& table, const MatchingCertificate& cert,
                              const VariableVector& x, std::string* reason) {
  auto fail = [&](const std::string& why) {
    if (reason) *reason = why;
    return false;
  };
  if (cert.d != table.d() || cert.q != table.q())
    throw std::invalid_argument("certificate and table refer to different (d,q)");
  if (static_cast<long>(x.size()) != table.q())
    throw std::invalid_argument("variable vector must have q entries");

  std::map<std::size_t, Rational> sigma;
  auto sigma_of = [&](std::size_t idx) -> const Rational& {
    auto it = sigma.find(idx);
    if (it == sigma.end()) it = sigma.emplace(idx, sigma_ell(cert.partitions[idx], x)).first;
    return it->second;
  };

  Rational lhs = 0;
  for (std::size_t idx : cert.n_indices) lhs += -table.row(idx).omega * sigma_of(idx);
  Rational rhs = 0;
  for (std::size_t idx : cert.p_indices) rhs += table.row(idx).omega * sigma_of(idx);

  Rational tau_lower = 0, tau_upper = 0;
  for (const TauEntry& entry : cert.tau) {
    const Rational& sn = sigma_of(entry.n);
    const Rational& sp = sigma_of(entry.p);
    if (entry.value * sn > entry.value * sp)
      return fail("chain step failed at (" + cert.partitions[entry.n].str() + ", " +
                  cert.partitions[entry.p].str() + ")");
    tau_lower += entry.value * sn;
    tau_upper += entry.value * sp;
  }
  if (lhs != tau_lower) return fail("row-sum regrouping does not reproduce the left side");
  if (rhs != tau_upper) return fail("column-sum regrouping does not reproduce the right side");
  if (lhs > rhs) return fail("master inequality violated");
  return true;
}

bool w_restricted_sum_identity(const Partition& l, const VariableVector& x,
                               const Rational& restricted_sum) {
  const long q = static_cast<long>(x.size());
  Rational rhs = Rational(w_cardinality(l, q), factorial(q)) * sigma_ell(l, x);
  rhs.canonicalize();
  return restricted_sum == rhs;
}

}  // namespace momext
