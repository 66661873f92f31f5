#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"
#include "thetakernel/exactmath.hpp"

using namespace thetakernel;

TEST_CASE("legendre symbol values", "[exactmath]") {
  CHECK(legendre(1, 7) == 1);
  CHECK(legendre(0, 7) == 0);
  CHECK(legendre(2, 5) == -1);
  for (std::int64_t p : {3, 5, 7, 11, 13, 23, 31, 47})
    for (std::int64_t a = -60; a <= 60; ++a) CHECK(legendre(a, p) == oracle::legendre(a, p));
  CHECK(legendre(Integer("123456789012345678901234567"), 23) ==
        oracle::legendre(static_cast<std::int64_t>(mpz_fdiv_ui(Integer("123456789012345678901234567").get_mpz_t(), 23)), 23));
}

TEST_CASE("legendre rejects non-primes", "[exactmath]") {
  CHECK_THROWS_AS(legendre(2, 9), InputError);
  CHECK_THROWS_AS(legendre(2, 2), InputError);
  CHECK_THROWS_AS(legendre(2, 1), InputError);
}

TEST_CASE("chi_p is the character of (-1)^((p-1)/2) p", "[exactmath]") {
  for (std::int64_t p : {3, 5, 7, 23})
    for (std::int64_t m = 1; m < 60; ++m) {
      if (m % p == 0) continue;
      const std::int64_t pstar = p % 4 == 1 ? p : -p;
      int expected = 1;
      std::int64_t r = m;
      // Product of (pstar / q) over the odd prime factors q of m, times the 2-part.
      for (std::int64_t q = 2; r > 1; ++q)
        while (r % q == 0) {
          r /= q;
          if (q == 2)
            expected *= (((pstar % 8) + 8) % 8 == 1) ? 1 : -1;
          else
            expected *= oracle::legendre(pstar, q);
        }
      CHECK(chi_p(m, p) == expected);
    }
  CHECK_THROWS_AS(chi_p(23, 23), InputError);
}

TEST_CASE("primality", "[exactmath]") {
  std::vector<std::int64_t> primes;
  for (std::int64_t n = 0; n < 2000; ++n) {
    bool prime = n >= 2;
    for (std::int64_t d = 2; d * d <= n && prime; ++d) prime = n % d != 0;
    CHECK(is_prime(n) == prime);
  }
  CHECK(is_prime(2305843009213693951LL));
  CHECK_FALSE(is_prime(3215031751LL));
}

TEST_CASE("hilbert symbol examples", "[exactmath]") {
  CHECK(hilbert_symbol(-1, -1, Place::infinity()) == -1);
  for (int b : {-7, -1, 2, 3, 23})
    for (auto v : {Place::infinity(), Place::prime(2), Place::prime(3), Place::prime(23)})
      CHECK(hilbert_symbol(1, b, v) == 1);
  CHECK(hilbert_symbol(2, 5, Place::prime(5)) == -1);
  CHECK(oracle::hilbert_odd(2, 5, 5) == -1);
  CHECK_THROWS_AS(hilbert_symbol(0, 3, Place::prime(3)), InputError);
  CHECK_THROWS_AS(hilbert_symbol(3, 0, Place::infinity()), InputError);
}

TEST_CASE("hilbert symbol agrees with brute-force solubility", "[exactmath]") {
  for (std::int64_t p : {3, 5})
    for (std::int64_t a : {-15, -5, -3, -2, -1, 1, 2, 3, 5, 6, 7, 10})
      for (std::int64_t b : {-5, -3, -1, 2, 3, 5, 7})
        CHECK(hilbert_symbol(a, b, Place::prime(p)) == oracle::hilbert_odd(a, b, p));
}

namespace {

Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-300, 300), den(1, 60);
  int n = 0;
  while (n == 0) n = num(rng);
  Rational r(n, den(rng));
  r.canonicalize();
  return r;
}

std::vector<Place> places_for(const std::vector<Rational>& xs) {
  std::set<std::int64_t> primes{2};
  for (const auto& x : xs)
    for (const Integer& part : {Integer(x.get_num()), Integer(x.get_den())})
      if (abs(part) > 1)
        for (const auto& q : prime_divisors(part)) primes.insert(q.get_si());
  std::vector<Place> out{Place::infinity()};
  for (auto q : primes) out.push_back(Place::prime(q));
  return out;
}

}  // namespace

TEST_CASE("hilbert symbol: bimultiplicativity, symmetry and product formula", "[exactmath][property]") {
  std::mt19937_64 rng(20240601);
  for (std::int64_t v : {0, 2, 3, 5, 7, 23}) {
    const Place place = v == 0 ? Place::infinity() : Place::prime(v);
    for (int trial = 0; trial < 200; ++trial) {
      const Rational a = random_rational(rng), a2 = random_rational(rng), b = random_rational(rng);
      CHECK(hilbert_symbol(a * a2, b, place) == hilbert_symbol(a, b, place) * hilbert_symbol(a2, b, place));
      CHECK(hilbert_symbol(a, b, place) == hilbert_symbol(b, a, place));
      CHECK(hilbert_symbol(a, -a, place) == 1);
    }
  }
  for (int trial = 0; trial < 100; ++trial) {
    const Rational a = random_rational(rng), b = random_rational(rng);
    int product = 1;
    for (const auto& place : places_for({a, b})) product *= hilbert_symbol(a, b, place);
    CHECK(product == 1);
  }
}

TEST_CASE("valuations", "[exactmath]") {
  CHECK(valuation(Rational(23), 23) == PadicValue::from_integer(1));
  CHECK(valuation(Rational(1, 529), 23) == PadicValue::from_integer(-2));
  CHECK(valuation(Rational(12, 7), 23) == PadicValue::from_integer(0));
  CHECK(valuation(Rational(0), 23).is_infinite());
  CHECK(PadicValue::from_halves(-5).to_string() == "-5/2");
  CHECK(PadicValue::from_halves(6).to_string() == "3");
  CHECK(PadicValue::infinity().to_string() == "inf");
  CHECK(PadicValue::from_halves(-1) < PadicValue::from_integer(0));
  CHECK(PadicValue::from_integer(100) < PadicValue::infinity());
  CHECK_THROWS(PadicValue::from_halves(3).as_integer());

  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const Rational x = random_rational(rng), y = random_rational(rng);
    for (std::int64_t p : {3, 5, 7})
      CHECK(valuation(Rational(x * y), p) == valuation(x, p) + valuation(y, p));
  }
}

TEST_CASE("reduction of p-integral rationals", "[exactmath]") {
  CHECK(reduce_mod_p(Rational(1, 2), 5) == 3);
  CHECK(reduce_mod_p(Rational(-1), 7) == 6);
  CHECK(reduce_mod_p(Rational(46), 23) == 0);
  CHECK_THROWS(reduce_mod_p(Rational(1, 23), 23));
}

TEST_CASE("fp_rank", "[exactmath]") {
  CHECK(fp_rank(FpMatrix(5, 3, 4)) == 0);
  for (std::size_t k = 1; k <= 5; ++k) CHECK(fp_rank(FpMatrix::reduce(IntMatrix::identity(k), 7)) == k);
  CHECK(fp_rank(FpMatrix::reduce(IntMatrix{{4, 1}, {1, 6}}, 23)) == 1);

  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> entry(0, 4);
  for (int trial = 0; trial < 200; ++trial) {
    oracle::Mat rows(3, oracle::Vec(3));
    FpMatrix m(5, 3, 3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        rows[i][j] = entry(rng);
        m.set(i, j, rows[i][j]);
      }
    CHECK(fp_rank(m) == oracle::fp_rank_by_span(rows, 5));
  }
}

TEST_CASE("fp_kernel vectors are annihilated", "[exactmath]") {
  const FpMatrix m = FpMatrix::reduce(IntMatrix{{6, 3}, {3, 6}}, 3);
  const auto kernel = fp_kernel(m);
  CHECK(kernel.size() == 2);
  const FpMatrix a = FpMatrix::reduce(IntMatrix{{2, -1, 0, 0}, {-1, 2, -1, 0}, {0, -1, 2, -1}, {0, 0, -1, 2}}, 5);
  const auto k = fp_kernel(a);
  REQUIRE(k.size() == 1);
  for (std::size_t i = 0; i < 4; ++i) {
    std::int64_t s = 0;
    for (std::size_t j = 0; j < 4; ++j) s += a.at(i, j) * k[0][j];
    CHECK(s % 5 == 0);
  }
}

TEST_CASE("prime divisors", "[exactmath]") {
  CHECK(prime_divisors(Integer(360)) == std::vector<Integer>{2, 3, 5});
  CHECK(prime_divisors(Integer(-23)) == std::vector<Integer>{23});
  const Integer big = Integer("1000000007") * Integer("998244353");
  CHECK(prime_divisors(big) == std::vector<Integer>{Integer("998244353"), Integer("1000000007")});
}
