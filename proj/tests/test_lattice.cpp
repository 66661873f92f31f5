#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"
#include "thetakernel/lattice.hpp"

using namespace thetakernel;

namespace {

oracle::Mat rows_of(const GramMatrix& s) {
  oracle::Mat m(s.size(), oracle::Vec(s.size()));
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j < s.size(); ++j) m[i][j] = s(i, j);
  return m;
}

const GramMatrix kA2 = GramMatrix::from_rows({{2, 1}, {1, 2}});
const GramMatrix kS231 = GramMatrix::from_rows({{4, 1}, {1, 6}});

std::vector<GramMatrix> corpus() {
  return {kA2,
          kS231,
          GramMatrix::from_rows({{2, 1}, {1, 12}}),
          GramMatrix::from_rows({{4, 1}, {1, 8}}),
          GramMatrix::from_rows({{6, 1}, {1, 8}}),
          GramMatrix::from_rows({{2, 0}, {0, 2}}),
          GramMatrix::from_rows({{2, 0, 0}, {0, 4, 2}, {0, 2, 6}}),
          root_lattice_a(3),
          root_lattice_a(4),
          GramMatrix::from_rows({{4, 1, 0, 1}, {1, 4, 1, 0}, {0, 1, 4, 1}, {1, 0, 1, 4}})};
}

std::vector<Place> all_places(const GramMatrix& s) { return relevant_places(s); }

}  // namespace

TEST_CASE("Gram matrix validation", "[lattice]") {
  CHECK_THROWS_AS(GramMatrix::from_rows({{2, 1}, {0, 2}}), InputError);
  CHECK_THROWS_AS(GramMatrix::from_rows({{3, 1}, {1, 2}}), InputError);
  CHECK_THROWS_AS(GramMatrix::from_rows({{2, 3}, {3, 2}}), InputError);
  CHECK_THROWS_AS(GramMatrix::from_rows({{2, 2}, {2, 2}}), InputError);
  CHECK_NOTHROW(GramMatrix::from_rows({{2}}));
}

TEST_CASE("det_level examples", "[lattice]") {
  auto a2 = det_level(kA2);
  CHECK(a2.determinant == 3);
  CHECK(a2.level == 3);
  auto e8 = det_level(root_lattice_e8());
  CHECK(e8.determinant == 1);
  CHECK(e8.level == 1);
  auto s = det_level(kS231);
  CHECK(s.determinant == 23);
  CHECK(s.level == 23);
  auto two = det_level(GramMatrix::from_rows({{2, 0, 0}, {0, 2, 0}, {0, 0, 2}}));
  CHECK(two.determinant == 8);
  CHECK(two.level == 4);
}

TEST_CASE("level is minimal with N S^-1 even", "[lattice][property]") {
  for (const auto& s : corpus()) {
    const auto dl = det_level(s);
    const RationalMatrix inv = inverse(to_rational(s.matrix()));
    auto even_integral = [&](std::int64_t n) {
      for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = 0; j < s.size(); ++j) {
          const Rational x = inv(i, j) * n;
          if (x.get_den() != 1) return false;
          if (i == j && x.get_num() % 2 != 0) return false;
        }
      return true;
    };
    const std::int64_t level = dl.level.get_si();
    CHECK(even_integral(level));
    for (std::int64_t n = 1; n < level; ++n) CHECK_FALSE(even_integral(n));
    const DualGram dual = dual_gram(s);
    CHECK(dual.level == dl.level);
    CHECK(dual.inverse == inv);
    const GramMatrix g = dual.scaled_inverse();
    for (std::size_t i = 0; i < s.size(); ++i)
      for (std::size_t j = 0; j < s.size(); ++j) CHECK(Rational(g(i, j)) == inv(i, j) * level);
  }
}

TEST_CASE("dual_gram examples", "[lattice]") {
  const DualGram a2 = dual_gram(kA2);
  CHECK(a2.level == 3);
  CHECK(a2.inverse(0, 0) == Rational(2, 3));
  CHECK(a2.inverse(0, 1) == Rational(-1, 3));
  const DualGram two = dual_gram(GramMatrix::from_rows({{2, 0}, {0, 2}}));
  CHECK(two.level == 4);
  CHECK(two.inverse(0, 0) == Rational(1, 2));
  const DualGram e8 = dual_gram(root_lattice_e8());
  CHECK(e8.level == 1);
}

TEST_CASE("rank mod p", "[lattice]") {
  CHECK(rank_mod_p(root_lattice_e8(), 3) == 8);
  CHECK(rank_mod_p(kS231, 23) == 1);
  CHECK(rank_mod_p(root_lattice_a(4), 5) == 3);
  CHECK(rank_mod_p(root_lattice_a(4), 7) == 4);
}

TEST_CASE("minors_matrix", "[lattice]") {
  const HalfIntegralMatrix t = HalfIntegralMatrix::from_twice({{2, 1}, {1, 12}});
  const RationalMatrix m2 = minors_matrix(t, 2);
  REQUIRE(m2.rows() == 1);
  CHECK(m2(0, 0) == Rational(23, 4));
  CHECK(minors_matrix(t, 1) == t.to_rational());
  CHECK_THROWS_AS(minors_matrix(t, 0), InputError);
  CHECK_THROWS_AS(minors_matrix(t, 3), InputError);

  const HalfIntegralMatrix t3 = HalfIntegralMatrix::from_twice({{2, 1, 0}, {1, 4, 1}, {0, 1, 6}});
  const RationalMatrix m = minors_matrix(t3, 2);
  REQUIRE(m.rows() == 3);
  // Rows {0,1}, columns {1,2}: det [[1/2, 0], [2, 1/2]] = 1/4.
  CHECK(m(0, 2) == Rational(1, 4));
  CHECK(minors_matrix(t3, 3)(0, 0) == determinant(t3.to_rational()));
}

TEST_CASE("minors_matrix is multiplicative (Cauchy-Binet)", "[lattice][property]") {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<int> entry(-3, 3);
  for (std::size_t n = 2; n <= 4; ++n)
    for (int trial = 0; trial < 10; ++trial) {
      RationalMatrix a(n, n), b(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          a(i, j) = entry(rng);
          b(i, j) = entry(rng);
        }
      for (std::size_t r = 1; r <= n; ++r) CHECK(minors_matrix(a * b, r) == minors_matrix(a, r) * minors_matrix(b, r));
    }
}

TEST_CASE("enumerate_vectors examples", "[lattice]") {
  CHECK(enumerate_vectors(kA2, 0) == std::vector<IntVector>{{0, 0}});
  CHECK(enumerate_vectors(kA2, 2).size() == 7);
  CHECK(enumerate_vectors(root_lattice_e8(), 2).size() == 241);
  CHECK(enumerate_vectors(root_lattice_e8(), 4).size() == 241 + 2160);
}

TEST_CASE("enumerate_vectors agrees with box enumeration", "[lattice][property]") {
  for (const auto& s : corpus()) {
    if (s.size() > 4) continue;
    for (std::int64_t bound : {0, 2, 4, 6, 8}) {
      auto got = enumerate_vectors(s, bound);
      auto expected = oracle::box_vectors(rows_of(s), bound, 5);
      std::sort(got.begin(), got.end());
      std::sort(expected.begin(), expected.end());
      CHECK(got == expected);
    }
  }
}

TEST_CASE("enumerate_vectors is sorted by norm", "[lattice]") {
  const auto vs = enumerate_vectors(root_lattice_a(4), 10);
  for (std::size_t i = 1; i < vs.size(); ++i) {
    const auto a = root_lattice_a(4).norm(vs[i - 1]), b = root_lattice_a(4).norm(vs[i]);
    CHECK((a < b || (a == b && vs[i - 1] < vs[i])));
  }
}

TEST_CASE("is_p_maximal", "[lattice]") {
  for (const auto& s : {kS231, GramMatrix::from_rows({{2, 1}, {1, 12}}), GramMatrix::from_rows({{4, 1}, {1, 8}}),
                        GramMatrix::from_rows({{6, 1}, {1, 8}})}) {
    const std::int64_t p = det_level(s).determinant.get_si();
    CHECK(is_p_maximal(s, p));
  }
  CHECK_FALSE(is_p_maximal(kA2.scaled(3), 3));
  CHECK(is_p_maximal(orthogonal_sum(GramMatrix::from_rows({{2, 1}, {1, 6}}), root_lattice_a(10)), 11));
  CHECK(det_level(orthogonal_sum(GramMatrix::from_rows({{2, 1}, {1, 6}}), root_lattice_a(10))).determinant == 121);
}

TEST_CASE("is_p_maximal agrees with the coset oracle", "[lattice][property]") {
  std::vector<GramMatrix> cases = corpus();
  cases.push_back(kA2.scaled(3));
  cases.push_back(kA2.scaled(5));
  cases.push_back(GramMatrix::from_rows({{2, 1}, {1, 2}}).scaled(7));
  cases.push_back(orthogonal_sum(kS231, kS231));
  cases.push_back(orthogonal_sum(root_lattice_a(2), GramMatrix::from_rows({{6}})));
  cases.push_back(GramMatrix::from_rows({{18, 9}, {9, 18}}));
  for (const auto& s : cases)
    for (std::int64_t p : {3, 5, 7, 11, 23}) {
      if (s.size() > 6) continue;
      CHECK(is_p_maximal(s, p) == !oracle::has_even_overlattice_vector(rows_of(s), p));
    }
}

TEST_CASE("hasse_witt examples", "[lattice]") {
  const GramMatrix id4 = GramMatrix::from_rows({{2, 0, 0, 0}, {0, 2, 0, 0}, {0, 0, 2, 0}, {0, 0, 0, 2}});
  for (std::int64_t p : {3, 5, 7}) CHECK(hasse_witt(id4, Place::prime(p)) == 1);
  const std::vector<Rational> hyperbolic{1, -1};
  CHECK(hasse_witt_diagonal(hyperbolic, Place::infinity()) == 1);
  const GramMatrix v = orthogonal_sum(kS231.scaled(5), root_lattice_a(22));
  CHECK(hasse_witt(v, Place::prime(5)) == -1);
  CHECK(oracle::legendre(-23, 5) == -1);
}

TEST_CASE("hasse_witt is a class invariant and satisfies the product formula", "[lattice][property]") {
  std::mt19937_64 rng(99);
  for (const auto& s : corpus()) {
    const auto places = all_places(s);
    int product = 1;
    for (const auto& v : places) product *= hasse_witt(s, v);
    CHECK(product == 1);
    for (int trial = 0; trial < 20; ++trial) {
      const IntMatrix u = oracle::random_unimodular(s.size(), rng);
      const GramMatrix t = s.transformed(u);
      for (const auto& v : places) CHECK(hasse_witt(t, v) == hasse_witt(s, v));
      CHECK(hasse_witt(t, Place::prime(2)) == hasse_witt(s, Place::prime(2)));
    }
  }
}

TEST_CASE("A_(p-1) root lattices", "[lattice]") {
  const auto a3 = a_root_lattice(3);
  CHECK(a3.gram.matrix() == IntMatrix{{2, -1}, {-1, 2}});
  CHECK(det_level(a3.gram).determinant == 3);
  for (std::int64_t p : {3, 5, 7, 11}) {
    const auto l = a_root_lattice(p);
    const auto dl = det_level(l.gram);
    CHECK(dl.determinant == p);
    CHECK(dl.level == p);
    CHECK(l.certificate.verify(l.gram));
    CHECK(l.certificate.order == p);
    const IntMatrix& u = l.certificate.isometry;
    IntMatrix power = IntMatrix::identity(u.rows());
    for (std::int64_t k = 0; k < p; ++k) power = power * u;
    CHECK(power == IntMatrix::identity(u.rows()));
    CHECK(abs(determinant(u - IntMatrix::identity(u.rows()))) == p);
    CHECK(congruence_transform(l.gram.matrix(), u) == l.gram.matrix());
  }
}

TEST_CASE("p-special lattices from cyclotomic ideals", "[lattice]") {
  for (std::int64_t p : {3, 5, 7, 11})
    for (int t = 1; t <= p - 2; t += 2) {
      const auto l = p_special_lattice(p, t);
      const auto dl = det_level(l.gram);
      CHECK(l.gram.size() == static_cast<std::size_t>(p - 1));
      CHECK(dl.determinant == int_pow(p, static_cast<unsigned>(t)));
      CHECK(dl.level == p);
      CHECK(l.certificate.verify(l.gram));
    }
  const auto l51 = p_special_lattice(5, 1);
  CHECK(det_level(l51.gram).determinant == 5);
  CHECK(automorphisms(l51.gram).order() == automorphisms(root_lattice_a(4)).order());
  CHECK_THROWS_AS(p_special_lattice(5, 0), InputError);
  CHECK_THROWS_AS(p_special_lattice(5, 4), InputError);
  CHECK_THROWS_AS(p_special_lattice(7, 2), ContractError);
}

TEST_CASE("automorphism groups", "[lattice]") {
  const auto one = automorphisms(GramMatrix::from_rows({{2}}));
  CHECK(one.order() == 2);
  CHECK(automorphisms(kA2).order() == 12);
  const auto s = automorphisms(kS231);
  CHECK(s.order() == 2);
  CHECK_FALSE(s.has_improper());
  const auto amb = automorphisms(GramMatrix::from_rows({{2, 1}, {1, 12}}));
  CHECK(amb.order() == 4);
  CHECK(amb.has_improper());
  for (const auto& g : corpus()) {
    if (g.size() != 2) continue;
    CHECK(automorphisms(g).order() == oracle::automorphisms_2x2(rows_of(g), 3).size());
  }
  CHECK(automorphisms(root_lattice_a(3)).order() == 48);
}
