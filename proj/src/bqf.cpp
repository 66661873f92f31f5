#include "thetakernel/bqf.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>
#include <tuple>

namespace thetakernel {

namespace {

void validate_discriminant(std::int64_t d) {
  if (d >= 0) throw InputError("discriminant must be negative: " + std::to_string(d));
  const std::int64_t r = ((d % 4) + 4) % 4;
  if (r != 0 && r != 1) throw InputError("discriminant must be 0 or 1 mod 4: " + std::to_string(d));
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

bool BinaryForm::is_reduced() const {
  if (a <= 0 || std::abs(b) > a || a > c) return false;
  if ((std::abs(b) == a || a == c) && b < 0) return false;
  return true;
}

HalfIntegralMatrix BinaryForm::matrix() const {
  return HalfIntegralMatrix(IntMatrix{{2 * a, b}, {b, 2 * c}});
}

GramMatrix BinaryForm::gram() const { return GramMatrix(IntMatrix{{2 * a, b}, {b, 2 * c}}); }

Reduction reduce(const BinaryForm& input) {
  if (input.a <= 0 || input.discriminant() >= 0)
    throw InputError("reduce: form must be positive definite");
  BinaryForm f = input;
  IntMatrix m = IntMatrix::identity(2);
  const IntMatrix swap{{0, -1}, {1, 0}};

  auto translate = [&](std::int64_t k) {
    // (x, y) -> (x + k y, y)
    f = {f.a, f.b + 2 * f.a * k, f.a * k * k + f.b * k + f.c};
    m = m * IntMatrix{{1, k}, {0, 1}};
  };
  auto flip = [&] {
    f = {f.c, -f.b, f.a};
    m = m * swap;
  };

  while (true) {
    // Bring b into (-a, a].
    if (f.b > f.a || f.b <= -f.a) translate(floor_div(f.a - f.b, 2 * f.a));
    if (f.a > f.c) {
      flip();
      continue;
    }
    if (f.a == f.c && f.b < 0) flip();
    break;
  }
  return {f, m};
}

std::vector<BinaryFormClass> class_representatives(std::int64_t d) {
  validate_discriminant(d);
  std::vector<BinaryForm> forms;
  for (std::int64_t a = 1; 3 * a * a <= -d; ++a) {
    for (std::int64_t b = -a + 1; b <= a; ++b) {
      const std::int64_t num = b * b - d;
      if (num % (4 * a) != 0) continue;
      const BinaryForm f{a, b, num / (4 * a)};
      if (f.is_reduced()) forms.push_back(f);
    }
  }
  std::vector<BinaryForm> ambiguous, pairs;
  for (const auto& f : forms) {
    if (reduce(f.conjugate()).form == f)
      ambiguous.push_back(f);
    else if (f.b > 0)
      pairs.push_back(f);
  }
  auto by_shape = [](const BinaryForm& x, const BinaryForm& y) {
    return std::tuple(x.a, std::abs(x.b), -x.b) < std::tuple(y.a, std::abs(y.b), -y.b);
  };
  std::sort(ambiguous.begin(), ambiguous.end(), by_shape);
  std::sort(pairs.begin(), pairs.end(), by_shape);

  std::vector<BinaryFormClass> out;
  for (const auto& f : ambiguous) out.push_back({f, true, std::nullopt});
  for (const auto& f : pairs) {
    const std::size_t first = out.size();
    out.push_back({f, false, first + 1});
    out.push_back({reduce(f.conjugate()).form, false, first});
  }
  for (std::size_t i = 0; i < out.size(); ++i)
    if (out[i].ambiguous) out[i].gl_partner = i;
  return out;
}

std::size_t class_number(std::int64_t d) { return class_representatives(d).size(); }

std::vector<BinaryFormClass> ambiguous_classes(std::int64_t d) {
  auto all = class_representatives(d);
  std::vector<BinaryFormClass> out;
  for (auto& c : all)
    if (c.ambiguous) out.push_back(c);
  return out;
}

std::vector<BinaryForm> gl_class_representatives(std::int64_t d) {
  std::vector<BinaryForm> out;
  const auto all = class_representatives(d);
  for (std::size_t i = 0; i < all.size(); ++i)
    if (all[i].ambiguous || *all[i].gl_partner > i) out.push_back(all[i].form);
  return out;
}

std::int64_t epsilon_plus(const HalfIntegralMatrix& t) {
  if (!t.is_positive_definite()) throw InputError("epsilon_plus: T must be positive definite");
  if (t.size() == 1) return 1;
  if (t.size() != 2) throw InputError("epsilon_plus: only sizes 1 and 2 are supported");
  const GramMatrix g(t.twice());
  const auto vectors = enumerate_vectors(g, std::max(g(0, 0), g(1, 1)));
  std::int64_t count = 0;
  for (const auto& u : vectors) {
    if (g.norm(u) != g(0, 0)) continue;
    for (const auto& v : vectors) {
      if (g.norm(v) != g(1, 1) || g.inner(u, v) != g(0, 1)) continue;
      if (u[0] * v[1] - u[1] * v[0] == 1) ++count;
    }
  }
  return count;
}

}  // namespace thetakernel
