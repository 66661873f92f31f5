#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "thetakernel/analysis.hpp"
#include "thetakernel/bqf.hpp"

using namespace thetakernel;

namespace {

std::vector<QExpansion> family(std::int64_t p, std::int64_t bound, bool det) {
  std::vector<QExpansion> out;
  for (const auto& c : gl_class_representatives(-p))
    out.push_back(det ? theta_det_expansion(c.gram(), 2, bound) : theta_expansion(c.gram(), 2, bound));
  return out;
}

// |GL(n, F_p)| / (|GL(j)| |GL(n-j)| p^(j(n-j))).
Integer index_by_group_orders(int n, int j, std::int64_t p) {
  auto gl = [p](int k) {
    Integer o = 1;
    for (int i = 0; i < k; ++i) o *= int_pow(p, k) - int_pow(p, i);
    return o;
  };
  return gl(n) / (gl(j) * gl(n - j) * int_pow(p, static_cast<unsigned>(j * (n - j))));
}

}  // namespace

TEST_CASE("km trace bound", "[analysis]") {
  CHECK(km_trace_bound(3) == 2);
  CHECK(km_trace_bound(4) == 2);
  CHECK(km_trace_bound(23) == 7);
  CHECK(km_trace_bound(2000) == 501);
  CHECK(km_trace_bound(5) == 0);
  for (std::int64_t d = 3; d <= 300; ++d) {
    if (d % 4 == 1 || d % 4 == 2) continue;
    std::int64_t largest = 0;
    for (const auto& f : oracle::reduced_forms(-d)) largest = std::max(largest, f[0] + f[2]);
    CHECK(largest == km_trace_bound(d));
  }
}

TEST_CASE("km averages", "[analysis]") {
  const QExpansion a2 = theta_expansion(GramMatrix::from_rows({{2, 1}, {1, 2}}), 1, 10);
  CHECK(km_average(a2, 2) == 6);
  CHECK(km_average(a2, 3) == 0);
  for (std::int64_t p : {23, 31, 47})
    for (const auto& f : family(p, km_trace_bound(p), false)) CHECK(km_average(f, p) == 2);
  const auto f = family(23, 6, false);
  CHECK_THROWS_AS(km_average(f[0], 23), InputError);
  CHECK(km_average(f[0], 21) == 0);
  CHECK_THROWS_AS(km_average(f[0], 0), InputError);
}

TEST_CASE("km averages match the Hermite class count", "[analysis]") {
  for (std::int64_t m = 1; m <= 8; ++m) CHECK(hermite_class_count(m) == 2 * oracle::divisor_sum(m));
  for (std::int64_t p : {23, 31}) {
    const auto fs = family(p, km_trace_bound(25 * p), false);
    for (const auto& f : fs)
      for (std::int64_t m = 1; m <= 5; ++m) CHECK(km_average(f, p * m * m) == hermite_class_count(m));
  }
}

TEST_CASE("km divisibility", "[analysis]") {
  const std::int64_t d_max = 300;
  const auto fs = family(23, km_trace_bound(d_max), false);
  const Rational good[] = {12, -12};
  const KmReport ok = km_divisibility_check(good, fs, 23, d_max);
  CHECK(ok.pass());
  CHECK(ok.checked == static_cast<std::size_t>(d_max));

  const Rational single[] = {1, 0};
  const KmReport bad = km_divisibility_check(single, fs, 23, d_max);
  CHECK_FALSE(bad.pass());
  REQUIRE(bad.witness);
  CHECK(*bad.witness == 23);

  const Rational unbalanced[] = {1, -2};
  CHECK_FALSE(km_divisibility_check(unbalanced, fs, 23, 30).coefficient_sum_ok);

  const auto dets = family(23, km_trace_bound(d_max), true);
  const Rational one[] = {0, 1};
  const KmReport vanish = km_divisibility_check(one, dets, 23, d_max, KmMode::vanishing);
  CHECK(vanish.pass());
  CHECK(vanish.nonzero.empty());
  CHECK_FALSE(km_divisibility_check(single, fs, 23, 30, KmMode::vanishing).pass());
}

TEST_CASE("F_p dimensions of theta families", "[analysis]") {
  const std::vector<std::pair<std::int64_t, std::pair<std::size_t, std::size_t>>> expected{
      {23, {2, 1}}, {31, {2, 1}}, {47, {3, 2}}};
  for (const auto& [p, dims] : expected) {
    CHECK(fp_dimension(family(p, 12, false), p, 12) == dims.first);
    CHECK(fp_dimension(family(p, 12, true), p, 12) == dims.second);
  }
  const auto fs = family(23, 4, false);
  CHECK_THROWS_AS(fp_dimension(fs, 23, 5), InputError);
  CHECK(fp_dimension(std::vector<QExpansion>{}, 23, 5) == 0);
}

TEST_CASE("coset indices", "[analysis]") {
  CHECK(coset_index_d(2, 1, 3) == 4);
  CHECK(coset_index_d(3, 1, 3) == 13);
  CHECK(coset_index_d(4, 2, 3) == 130);
  CHECK(coset_index_brute_force(2, 1, 3) == 4);
  CHECK(coset_index_brute_force(3, 1, 3) == 13);
  CHECK(coset_index_brute_force(3, 2, 3) == 13);
  CHECK(coset_index_product(1, 3) == 4);
  CHECK(coset_index_product(0, 3) == 1);
  CHECK(level_change_index(2, 3) == 40);
  CHECK_THROWS_AS(coset_index_d(2, 3, 3), InputError);
  CHECK_THROWS_AS(coset_index_brute_force(4, 2, 5), InputError);
}

TEST_CASE("coset index properties", "[analysis][property]") {
  for (std::int64_t p : {3, 5, 7, 23})
    for (int n = 0; n <= 4; ++n)
      for (int j = 0; j <= n; ++j) {
        const Integer d = coset_index_d(n, j, p);
        CHECK(d % p == 1);
        CHECK(d == index_by_group_orders(n, j, p));
        CHECK(d == coset_index_d(n, n - j, p));
        if (n == 2 * j) CHECK(Rational(d) == coset_index_product(j, p));
      }
}

TEST_CASE("witt identities", "[analysis]") {
  for (auto [p, q] : std::vector<std::pair<std::int64_t, std::int64_t>>{{23, 3}, {23, 5}, {31, 3}, {31, 7}, {47, 3}}) {
    for (const auto& c : gl_class_representatives(-p)) {
      const WittReport w = witt_identity_check(c.gram(), p, q);
      CHECK(w.legendre_minus_p_q == oracle::legendre(-p, q));
      CHECK(w.s_q == w.legendre_minus_p_q);
      CHECK(w.product == 1);
      CHECK(w.pass());
    }
  }
  CHECK(witt_auxiliary_prime(23) == 5);
  CHECK(witt_auxiliary_prime(31) == 3);
  CHECK_THROWS_AS(witt_identity_check(BinaryForm{1, 1, 6}.gram(), 23, 23), InputError);
  CHECK_THROWS_AS(witt_identity_check(BinaryForm{2, 1, 3}.gram(), 31, 3), InputError);
}

TEST_CASE("congruence checks", "[analysis]") {
  const QExpansion one = constant_expansion(1, 20);
  CHECK(congruence_check(theta_expansion(root_lattice_a(4), 1, 20), one, 5, 20).pass);
  const auto bad = congruence_check(theta_expansion(GramMatrix::from_rows({{2, 1}, {1, 2}}), 1, 20), one, 5, 20);
  CHECK_FALSE(bad.pass);
  REQUIRE(bad.witness);
  CHECK(bad.witness->scaled_trace() == 2);
  CHECK(bad.nu_difference == PadicValue::from_integer(0));
  const QExpansion f = theta_expansion(root_lattice_a(4), 1, 10);
  CHECK(congruence_check(f, f, 5, 10).nu_difference.is_infinite());
  CHECK_THROWS_AS(congruence_check(f, one, 5, 11), InputError);
}

TEST_CASE("h-series weights and cusp expansions", "[analysis]") {
  CHECK(erratum_weight(5, 0) == 1);
  CHECK(erratum_weight(5, 1) == -5);
  CHECK(erratum_weight(7, 2) == 343);
  const ErratumReport r = erratum_h_series(5, 1, 30);
  CHECK(r.h_congruent_to_one.pass);
  REQUIRE(r.cusps.size() == 1);
  CHECK(r.cusps[0].constant_term == 0);
  CHECK(r.cusps[0].nu == PadicValue::from_halves(1));
  CHECK(r.cusps[0].required_halves == 1);
  CHECK(r.pass());
  CHECK_THROWS_AS(erratum_h_series(3, 1, 5), InputError);
}
