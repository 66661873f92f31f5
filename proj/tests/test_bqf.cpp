#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "thetakernel/bqf.hpp"

using namespace thetakernel;

TEST_CASE("reduce examples", "[bqf]") {
  CHECK(reduce({1, 1, 6}).form == BinaryForm{1, 1, 6});
  CHECK(reduce({6, 1, 1}).form == BinaryForm{1, 1, 6});
  CHECK(reduce({3, 2, 4}).form == BinaryForm{3, 2, 4});
  CHECK_THROWS_AS(reduce({1, 3, 1}), InputError);
  CHECK_THROWS_AS(reduce({-1, 1, -6}), InputError);
}

TEST_CASE("reduce returns a proper transform", "[bqf][property]") {
  for (std::int64_t a = 1; a <= 12; ++a)
    for (std::int64_t b = -15; b <= 15; ++b)
      for (std::int64_t c = 1; c <= 12; ++c) {
        const BinaryForm f{a, b, c};
        if (f.discriminant() >= 0) continue;
        const Reduction r = reduce(f);
        CHECK(r.form.is_reduced());
        CHECK(r.form.discriminant() == f.discriminant());
        CHECK(determinant(r.transform) == 1);
        CHECK(congruence_transform(f.matrix().twice(), r.transform) == r.form.matrix().twice());
      }
}

TEST_CASE("class representatives", "[bqf]") {
  const auto c23 = class_representatives(-23);
  REQUIRE(c23.size() == 3);
  CHECK(c23[0].form == BinaryForm{1, 1, 6});
  CHECK(c23[0].ambiguous);
  CHECK(c23[1].form == BinaryForm{2, 1, 3});
  CHECK(c23[2].form == BinaryForm{2, -1, 3});
  CHECK(*c23[1].gl_partner == 2);
  CHECK(*c23[2].gl_partner == 1);
  CHECK(class_representatives(-3).size() == 1);
  CHECK(class_representatives(-3)[0].form == BinaryForm{1, 1, 1});
  CHECK(class_number(-47) == 5);
  CHECK(class_number(-23) == 3);
  CHECK(class_number(-31) == 3);
  CHECK(class_number(-4) == 1);
  CHECK_THROWS_AS(class_representatives(-5), InputError);
  CHECK_THROWS_AS(class_representatives(5), InputError);
}

TEST_CASE("class numbers agree with a direct scan", "[bqf][property]") {
  for (std::int64_t d = -200; d < 0; ++d) {
    if (((d % 4) + 4) % 4 > 1) continue;
    const auto reps = class_representatives(d);
    CHECK(reps.size() == oracle::reduced_forms(d).size());
    for (std::size_t i = 0; i < reps.size(); ++i)
      for (std::size_t j = i + 1; j < reps.size(); ++j) CHECK_FALSE(reduce(reps[i].form).form == reduce(reps[j].form).form);
  }
}

TEST_CASE("ambiguous classes", "[bqf]") {
  CHECK(ambiguous_classes(-23).size() == 1);
  CHECK(ambiguous_classes(-23)[0].form == BinaryForm{1, 1, 6});
  CHECK(ambiguous_classes(-3)[0].form == BinaryForm{1, 1, 1});
  for (std::int64_t p = 3; p < 200; ++p) {
    if (!is_prime(p) || p % 4 != 3) continue;
    CHECK(ambiguous_classes(-p).size() == 1);
    const std::size_t h = class_number(-p);
    CHECK(h % 2 == 1);
    CHECK(gl_class_representatives(-p).size() == (h + 1) / 2);
  }
}

TEST_CASE("non-ambiguous classes pair up under b -> -b", "[bqf][property]") {
  for (std::int64_t d = -200; d < 0; ++d) {
    if (((d % 4) + 4) % 4 > 1) continue;
    const auto reps = class_representatives(d);
    for (std::size_t i = 0; i < reps.size(); ++i) {
      const BinaryForm conj = reduce(reps[i].form.conjugate()).form;
      CHECK(reps[*reps[i].gl_partner].form == conj);
      CHECK(reps[i].ambiguous == (conj == reps[i].form));
    }
  }
}

TEST_CASE("epsilon_plus", "[bqf]") {
  CHECK(epsilon_plus(BinaryForm{2, 1, 3}.matrix()) == 2);
  CHECK(epsilon_plus(BinaryForm{1, 0, 1}.matrix()) == 4);
  CHECK(epsilon_plus(BinaryForm{1, 1, 1}.matrix()) == 6);
  CHECK(epsilon_plus(HalfIntegralMatrix::from_twice({{4}})) == 1);
  CHECK_THROWS_AS(epsilon_plus(HalfIntegralMatrix::from_twice({{2, 2}, {2, 2}})), InputError);
}

TEST_CASE("epsilon_plus against brute force", "[bqf][property]") {
  for (std::int64_t d = -100; d < 0; ++d) {
    if (((d % 4) + 4) % 4 > 1) continue;
    for (const auto& c : class_representatives(d)) {
      const auto& f = c.form;
      const oracle::Mat s{{2 * f.a, f.b}, {f.b, 2 * f.c}};
      std::int64_t proper = 0;
      for (const auto& u : oracle::automorphisms_2x2(s, 2))
        if (u[0][0] * u[1][1] - u[0][1] * u[1][0] == 1) ++proper;
      const std::int64_t e = epsilon_plus(f.matrix());
      CHECK(e == proper);
      CHECK(24 % e == 0);
      const bool special = (f.a == f.c && (f.b == 0 || f.b == f.a));
      CHECK((e == 2) == !special);
    }
  }
}
