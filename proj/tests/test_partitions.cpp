#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <random>

#include "momext/partitions.hpp"

using namespace momext;

namespace {

Partition make(std::vector<int> parts) { return Partition(std::move(parts)); }

// Independent oracle: p(n) by the classical pentagonal-number recurrence.
long partition_function(int n) {
  static std::map<int, long> cache{{0, 1}};
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  if (n < 0) return 0;
  long total = 0;
  for (int k = 1;; ++k) {
    const int g1 = k * (3 * k - 1) / 2;
    const int g2 = k * (3 * k + 1) / 2;
    if (g1 > n && g2 > n) break;
    const long sign = (k % 2 == 1) ? 1 : -1;
    if (g1 <= n) total += sign * partition_function(n - g1);
    if (g2 <= n) total += sign * partition_function(n - g2);
  }
  cache[n] = total;
  return total;
}

}  // namespace

TEST_CASE("enumeration follows the canonical order") {
  const auto p3 = enumerate_partitions(3);
  REQUIRE(p3.size() == 3);
  CHECK(p3[0] == make({3, 0, 0}));
  CHECK(p3[1] == make({2, 1, 0}));
  CHECK(p3[2] == make({1, 1, 1}));

  const auto p2 = enumerate_partitions(2);
  REQUIRE(p2.size() == 2);
  CHECK(p2[0] == make({2, 0}));
  CHECK(p2[1] == make({1, 1}));

  CHECK(enumerate_partitions(20).size() == 627);
}

TEST_CASE("enumeration counts match the pentagonal recurrence up to d = 25") {
  for (int d = 2; d <= 25; ++d)
    CHECK(static_cast<long>(enumerate_partitions(d).size()) == partition_function(d));
}

TEST_CASE("enumeration rejects bad input") {
  CHECK_THROWS_AS(enumerate_partitions(1), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_partitions(0), std::invalid_argument);
}

TEST_CASE("partition constructor validates invariants") {
  CHECK_THROWS_AS(make({1, 2, 0}), std::invalid_argument);  // increasing
  CHECK_THROWS_AS(make({2, 0, 0}), std::invalid_argument);  // wrong sum
  CHECK_THROWS_AS(make({3, -1, 1, 1}), std::invalid_argument);
}

TEST_CASE("dominance order basics") {
  CHECK(dominance_leq(make({1, 1, 1}), make({2, 1, 0})));
  CHECK(dominance_leq(make({2, 1, 0}), make({3, 0, 0})));
  CHECK_FALSE(dominance_leq(make({4, 1, 1, 0, 0, 0}), make({3, 3, 0, 0, 0, 0})));
  CHECK_FALSE(dominance_leq(make({3, 3, 0, 0, 0, 0}), make({4, 1, 1, 0, 0, 0})));
  const Partition a = make({2, 1, 0});
  CHECK(dominance_leq(a, a));
  CHECK_THROWS_AS(dominance_leq(make({2, 0}), make({2, 1, 0})), std::invalid_argument);
}

TEST_CASE("dominance is a partial order with the expected extremes") {
  for (int d : {4, 6, 8}) {
    const PartitionPoset poset(d);
    const std::size_t n = poset.size();
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(poset.leq(i, i));
      CHECK(poset.leq(i, poset.top_index()));
      CHECK(poset.leq(poset.bottom_index(), i));
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j && poset.leq(i, j)) CHECK_FALSE(poset.leq(j, i));
        for (std::size_t k = 0; k < n; ++k)
          if (poset.leq(i, j) && poset.leq(j, k)) CHECK(poset.leq(i, k));
      }
    }
  }
}

TEST_CASE("b_vector examples and invariants") {
  const BVector b1 = b_vector(make({2, 1, 0}), 5);
  CHECK(b1.counts == std::vector<long>{3, 1, 1, 0});
  const BVector b2 = b_vector(make({1, 1, 1}), 5);
  CHECK(b2.counts == std::vector<long>{2, 3, 0, 0});
  const BVector b3 = b_vector(make({3, 0, 0}), 7);
  CHECK(b3.counts == std::vector<long>{6, 0, 0, 1});

  CHECK_THROWS_AS(b_vector(make({2, 1, 0}), 3), std::invalid_argument);

  std::mt19937_64 rng(7);
  for (int d = 2; d <= 10; ++d) {
    const auto all = enumerate_partitions(d);
    for (const Partition& l : all) {
      const long q = d + 1 + static_cast<long>(rng() % 40);
      const BVector b = b_vector(l, q);
      long total = 0, weighted = 0;
      for (std::size_t j = 0; j < b.counts.size(); ++j) {
        total += b.counts[j];
        weighted += static_cast<long>(j) * b.counts[j];
      }
      CHECK(total == q);
      CHECK(weighted == d);
    }
  }
}

TEST_CASE("multinomial_d examples") {
  CHECK(multinomial_d(make({1, 1, 1})) == 6);
  CHECK(multinomial_d(make({3, 0, 0})) == 1);
  CHECK(multinomial_d(make({2, 2, 1, 1, 0, 0})) == 180);
}

TEST_CASE("multinomial_q examples and cross-check against the factorial ratio") {
  CHECK(multinomial_q(make({2, 1, 0}), 5) == 20);
  CHECK(multinomial_q(make({1, 1, 1}), 7) == 35);
  for (long q : {4L, 9L, 31L}) CHECK(multinomial_q(make({3, 0, 0}), q) == q);
  CHECK_THROWS_AS(multinomial_q(make({2, 1, 0}), 3), std::invalid_argument);

  // naive q! / prod b_j! with big integers
  auto naive = [](const Partition& l, long q) {
    const BVector b = b_vector(l, q);
    BigInt result;
    mpz_fac_ui(result.get_mpz_t(), static_cast<unsigned long>(q));
    for (long count : b.counts) {
      BigInt f;
      mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(count));
      mpz_divexact(result.get_mpz_t(), result.get_mpz_t(), f.get_mpz_t());
    }
    return result;
  };
  std::mt19937_64 rng(11);
  for (int d = 2; d <= 9; ++d)
    for (const Partition& l : enumerate_partitions(d)) {
      const long q = d + 1 + static_cast<long>(rng() % 60);
      CHECK(multinomial_q(l, q) == naive(l, q));
    }
}

TEST_CASE("ell_factorial and rho examples") {
  CHECK(ell_factorial(make({1, 1, 1})) == 1);
  CHECK(ell_factorial(make({2, 1, 0})) == 2);
  CHECK(ell_factorial(make({2, 2, 1, 1, 0, 0})) == 4);
  CHECK(rho(make({2, 1, 0})) == 2);
  CHECK(rho(make({1, 1, 1})) == 3);
  CHECK(rho(make({3, 0, 0})) == 1);
}

TEST_CASE("monotonicity along dominance, exhaustively for d <= 12") {
  for (int d = 2; d <= 12; ++d) {
    const PartitionPoset poset(d);
    for (std::size_t i = 0; i < poset.size(); ++i)
      for (std::size_t j = 0; j < poset.size(); ++j) {
        if (!poset.leq(i, j)) continue;
        CHECK(ell_factorial(poset[i]) <= ell_factorial(poset[j]));
        CHECK(rho(poset[i]) >= rho(poset[j]));
      }
  }
}

TEST_CASE("hardy-ramanujan estimate is within a factor of two at desk scale") {
  const double est20 = hardy_ramanujan_estimate(20);
  CHECK(est20 == doctest::Approx(692.0).epsilon(0.01));
  CHECK(est20 / 627.0 > 0.5);
  CHECK(est20 / 627.0 < 2.0);

  const double est10 = hardy_ramanujan_estimate(10);
  const double exact10 = static_cast<double>(enumerate_partitions(10).size());
  CHECK(est10 / exact10 > 0.5);
  CHECK(est10 / exact10 < 2.0);

  CHECK(hardy_ramanujan_estimate(2) > 0.0);
}

TEST_CASE("poset answers dominance queries beyond the precomputed-table range") {
  const PartitionPoset poset(22);  // no table above d = 20
  CHECK(poset.size() == 1002);
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t i = rng() % poset.size(), j = rng() % poset.size();
    CHECK(poset.leq(i, j) == dominance_leq(poset[i], poset[j]));
  }
}

TEST_CASE("poset index lookup") {
  const PartitionPoset poset(6);
  for (std::size_t i = 0; i < poset.size(); ++i) {
    const auto found = poset.index_of(poset[i]);
    REQUIRE(found.has_value());
    CHECK(*found == i);
  }
  CHECK(PartitionPoset(4).index_of(make({2, 1, 1, 0})).has_value());
}
