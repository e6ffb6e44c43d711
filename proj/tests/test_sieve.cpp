#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <thread>

#include "sflab/errors.hpp"
#include "sflab/sieve.hpp"
#include "support/oracles.hpp"

using namespace sflab;

TEST_CASE("sieve matches trial division exactly up to 1e5") {
  const auto table = SieveTable::build(100000);
  const auto expected = oracle::trial_division_primes(100000);
  REQUIRE(table.primes().size() == expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) CHECK(table.primes()[i] == expected[i]);
}

TEST_CASE("small and edge limits") {
  CHECK_THROWS_AS(SieveTable::build(1), DomainError);
  CHECK_THROWS_AS(SieveTable::build(u64(1) << 51), DomainError);
  const auto t2 = SieveTable::build(2);
  REQUIRE(t2.primes().size() == 1);
  CHECK(t2.primes()[0] == 2);

  const auto t30 = SieveTable::build(30);
  const std::vector<u64> expect{2, 3, 5, 7, 11, 13, 17, 19, 23, 29};
  REQUIRE(t30.primes().size() == expect.size());
  for (std::size_t i = 0; i < expect.size(); ++i) CHECK(t30.primes()[i] == expect[i]);
}

TEST_CASE("prime count at 1e6") {
  const auto table = SieveTable::build(1000000);
  CHECK(table.primes().size() == 78498);
}

TEST_CASE("log_prefix invariants") {
  const auto table = SieveTable::build(10000);
  const auto lp = table.log_prefix();
  REQUIRE(lp.size() == table.primes().size() + 1);
  CHECK(lp[0] == 0.0);
  for (std::size_t i = 1; i < lp.size(); ++i) CHECK(lp[i] > lp[i - 1]);
  CHECK(lp.back() == doctest::Approx(table.theta(10000)).epsilon(1e-15));
}

TEST_CASE("theta examples") {
  const auto table = SieveTable::build(1000);
  CHECK(table.theta(10) == doctest::Approx(std::log(210.0)).epsilon(1e-14));
  CHECK(table.theta(1.5) == 0.0);
  const auto primes = oracle::trial_division_primes(1000);
  CHECK(table.theta(100) == doctest::Approx(oracle::theta_direct(100, primes)).epsilon(1e-13));
  CHECK_THROWS_AS(table.theta(1001), RangeError);
}

TEST_CASE("psi examples and psi >= theta") {
  const auto table = SieveTable::build(1000000);
  CHECK(table.psi(10) == doctest::Approx(std::log(2520.0)).epsilon(1e-14));
  CHECK(table.psi(1) == 0.0);
  CHECK(table.psi(100) == doctest::Approx(oracle::psi_direct(100)).epsilon(1e-13));
  // psi - theta = sum_{k>=2} theta(x^{1/k}) >= 0 on a decade grid
  for (double x : {10.0, 100.0, 1000.0, 10000.0, 100000.0, 1000000.0}) {
    CHECK(table.psi(x) >= table.theta(x));
  }
}

TEST_CASE("window_theta prefix-sum associativity is exact") {
  const auto table = SieveTable::build(100000);
  CHECK(table.window_theta(10, 10) == 0.0);
  CHECK(table.window_theta(2.5, 10) == doctest::Approx(std::log(105.0)).epsilon(1e-14));
  CHECK(table.window_theta(0, 10) == table.theta(10));
  // exact associativity: both sides are the same prefix differences
  const double abc[][3] = {{0, 50, 1000}, {17, 230, 99000}, {2, 3, 5}};
  for (const auto& t : abc) {
    const double lhs = table.window_theta(t[0], t[1]) + table.window_theta(t[1], t[2]);
    const double rhs = table.window_theta(t[0], t[2]);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-15));
  }
  CHECK_THROWS_AS(table.window_theta(10, 5), DomainError);
}

TEST_CASE("direct window summation agrees with prefix lookups") {
  const auto table = SieveTable::build(100000);
  for (double a : {0.0, 10.0, 500.5, 40000.0}) {
    const double b = a + 5000;
    CHECK(table.window_theta_direct(a, b) ==
          doctest::Approx(table.window_theta(a, b)).epsilon(1e-12));
    CHECK(table.window_psi_direct(a, b) ==
          doctest::Approx(table.window_psi(a, b)).epsilon(1e-12));
  }
}

TEST_CASE("cache round trip is bit-exact") {
  const auto dir = std::filesystem::temp_directory_path() / "sflab_cache_test";
  std::filesystem::remove_all(dir);

  const auto fresh = SieveTable::build(5000, dir);
  CHECK_FALSE(fresh.loaded_from_cache());
  CHECK(fresh.cache_warning().empty());
  const auto file = SieveTable::cache_file(dir, 5000);
  REQUIRE(std::filesystem::exists(file));

  // header: magic + limit
  std::ifstream in(file, std::ios::binary);
  char magic[4];
  in.read(magic, 4);
  CHECK(std::string(magic, 4) == "SFL1");

  const auto cached = SieveTable::build(5000, dir);
  CHECK(cached.loaded_from_cache());
  REQUIRE(cached.primes().size() == fresh.primes().size());
  for (std::size_t i = 0; i < fresh.primes().size(); ++i) {
    CHECK(cached.primes()[i] == fresh.primes()[i]);
  }
  for (std::size_t i = 0; i < fresh.log_prefix().size(); ++i) {
    CHECK(cached.log_prefix()[i] == fresh.log_prefix()[i]);  // bitwise
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("cache write failure is a warning, not fatal") {
  const auto table = SieveTable::build(100, "/proc/no_such_dir/nested");
  CHECK_FALSE(table.cache_warning().empty());
  CHECK(table.primes().size() == 25);
}

// The compensated prefix differs from a naive left-to-right resummation by
// far less than 1e-6 relative at limit 1e8.
TEST_CASE("compensated summation stays close to naive resummation at 1e8" *
          doctest::timeout(120)) {
  const auto table = SieveTable::build(100000000);
  double naive = 0.0;
  for (u64 p : table.primes()) naive += std::log(static_cast<double>(p));
  const double comp = table.log_prefix().back();
  CHECK(std::abs(naive - comp) / comp < 1e-6);
}

TEST_CASE("completed table is shareable across threads") {
  const auto table = SieveTable::build(100000);
  const double want_theta = table.theta(99991);
  const double want_psi = table.psi(65536);
  std::vector<std::thread> workers;
  std::vector<int> ok(8, 0);
  for (int t = 0; t < 8; ++t) {
    workers.emplace_back([&, t] {
      bool good = true;
      for (int i = 0; i < 200; ++i) {
        good = good && table.theta(99991) == want_theta;
        good = good && table.psi(65536) == want_psi;
        good = good && table.is_prime(99991);
      }
      ok[static_cast<std::size_t>(t)] = good ? 1 : 0;
    });
  }
  for (auto& w : workers) w.join();
  for (int v : ok) CHECK(v == 1);
}
