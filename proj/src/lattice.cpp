#include "thetakernel/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace thetakernel {

namespace {

void validate_symmetric_square(const IntMatrix& m, const char* what) {
  if (m.rows() == 0 || !m.is_square()) throw InputError(std::string(what) + ": matrix must be square and nonempty");
  if (!m.is_symmetric()) throw InputError(std::string(what) + ": matrix must be symmetric");
  for (std::size_t i = 0; i < m.rows(); ++i)
    if (m(i, i) % 2 != 0) throw InputError(std::string(what) + ": diagonal entries must be even");
}

std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t r) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> current(r);
  std::iota(current.begin(), current.end(), 0);
  if (r > n) return out;
  while (true) {
    out.push_back(current);
    std::size_t i = r;
    while (i > 0 && current[i - 1] == n - r + i - 1) --i;
    if (i == 0) break;
    ++current[i - 1];
    for (std::size_t j = i; j < r; ++j) current[j] = current[j - 1] + 1;
  }
  return out;
}

Integer isqrt(const Integer& x) {
  Integer r;
  mpz_sqrt(r.get_mpz_t(), x.get_mpz_t());
  return r;
}

Integer floor_of(const Rational& x) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return r;
}

Integer ceil_of(const Rational& x) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return r;
}

IntMatrix companion_of_cyclotomic(std::int64_t p) {
  const std::size_t n = static_cast<std::size_t>(p - 1);
  IntMatrix u(n, n, 0);
  for (std::size_t i = 0; i + 1 < n; ++i) u(i + 1, i) = 1;
  for (std::size_t i = 0; i < n; ++i) u(i, n - 1) = -1;
  return u;
}

}  // namespace

GramMatrix::GramMatrix(IntMatrix entries) : s_(std::move(entries)) {
  validate_symmetric_square(s_, "GramMatrix");
  for (const auto& minor : leading_principal_minors(to_integer(s_)))
    if (minor <= 0) throw InputError("GramMatrix: matrix is not positive definite");
}

GramMatrix GramMatrix::from_rows(const std::vector<std::vector<std::int64_t>>& rows) {
  return GramMatrix(IntMatrix::from_rows(rows));
}

std::int64_t GramMatrix::norm(std::span<const std::int64_t> x) const { return inner(x, x); }

std::int64_t GramMatrix::inner(std::span<const std::int64_t> x, std::span<const std::int64_t> y) const {
  std::int64_t total = 0;
  for (std::size_t i = 0; i < size(); ++i) {
    if (x[i] == 0) continue;
    std::int64_t row = 0;
    for (std::size_t j = 0; j < size(); ++j) row += s_(i, j) * y[j];
    total += x[i] * row;
  }
  return total;
}

IntVector GramMatrix::apply(std::span<const std::int64_t> x) const {
  IntVector out(size(), 0);
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = 0; j < size(); ++j) out[i] += s_(i, j) * x[j];
  return out;
}

GramMatrix GramMatrix::scaled(std::int64_t factor) const {
  if (factor <= 0) throw InputError("GramMatrix::scaled: factor must be positive");
  return GramMatrix(s_.scaled(factor));
}

GramMatrix GramMatrix::transformed(const IntMatrix& u) const {
  if (u.rows() != size() || !u.is_square()) throw InputError("transformed: shape mismatch");
  return GramMatrix(congruence_transform(s_, u));
}

GramMatrix orthogonal_sum(const GramMatrix& a, const GramMatrix& b) {
  const std::size_t n = a.size() + b.size();
  IntMatrix s(n, n, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) s(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) s(a.size() + i, a.size() + j) = b(i, j);
  return GramMatrix(std::move(s));
}

HalfIntegralMatrix::HalfIntegralMatrix(IntMatrix twice) : twice_(std::move(twice)) {
  validate_symmetric_square(twice_, "HalfIntegralMatrix");
}

HalfIntegralMatrix HalfIntegralMatrix::from_twice(const std::vector<std::vector<std::int64_t>>& rows) {
  return HalfIntegralMatrix(IntMatrix::from_rows(rows));
}

Rational HalfIntegralMatrix::entry(std::size_t i, std::size_t j) const {
  Rational r(static_cast<long>(twice_(i, j)), 2);
  r.canonicalize();
  return r;
}

RationalMatrix HalfIntegralMatrix::to_rational() const {
  RationalMatrix t(size(), size());
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = 0; j < size(); ++j) t(i, j) = entry(i, j);
  return t;
}

bool HalfIntegralMatrix::is_positive_definite() const {
  for (const auto& minor : leading_principal_minors(to_integer(twice_)))
    if (minor <= 0) return false;
  return true;
}

DetLevel det_level(const GramMatrix& s) {
  const Integer det = determinant(s.matrix());
  if (det == 0) throw InputError("det_level: singular Gram matrix");
  const RationalMatrix inv = inverse(to_rational(s.matrix()));
  Integer level = 1;
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = 0; j < s.size(); ++j) {
      const Rational& r = inv(i, j);
      Integer need = r.get_den();
      // Diagonal: N * num / den must be even.
      if (i == j && mpz_odd_p(r.get_num_mpz_t())) need *= 2;
      mpz_lcm(level.get_mpz_t(), level.get_mpz_t(), need.get_mpz_t());
    }
  }
  return {det, level};
}

std::size_t rank_mod_p(const GramMatrix& s, std::int64_t p) {
  return fp_rank(FpMatrix::reduce(s.matrix(), p));
}

RationalMatrix minors_matrix(const RationalMatrix& t, std::size_t r) {
  if (!t.is_square()) throw InputError("minors_matrix: matrix must be square");
  const std::size_t n = t.rows();
  if (r < 1 || r > n) throw InputError("minors_matrix: r must satisfy 1 <= r <= n");
  const auto sets = subsets(n, r);
  RationalMatrix out(sets.size(), sets.size());
  RationalMatrix block(r, r);
  for (std::size_t a = 0; a < sets.size(); ++a) {
    for (std::size_t b = 0; b < sets.size(); ++b) {
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) block(i, j) = t(sets[a][i], sets[b][j]);
      out(a, b) = determinant(block);
    }
  }
  return out;
}

RationalMatrix minors_matrix(const HalfIntegralMatrix& t, std::size_t r) {
  return minors_matrix(t.to_rational(), r);
}

std::vector<IntVector> enumerate_vectors(const GramMatrix& s, std::int64_t bound) {
  if (bound < 0) throw InputError("enumerate_vectors: bound must be nonnegative");
  const std::size_t m = s.size();

  // Rational LDL^t in Fincke-Pohst form: S[x] = sum_i q_ii (x_i + sum_{j>i} q_ij x_j)^2.
  RationalMatrix q = to_rational(s.matrix());
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      q(j, i) = q(i, j);
      q(i, j) /= q(i, i);
    }
    for (std::size_t k = i + 1; k < m; ++k)
      for (std::size_t l = k; l < m; ++l) q(k, l) -= q(k, i) * q(i, l);
  }

  std::vector<IntVector> out;
  IntVector x(m, 0);
  std::vector<Rational> remaining(m + 1);
  remaining[m] = bound;

  auto recurse = [&](auto&& self, std::size_t level) -> void {
    const std::size_t i = level - 1;
    Rational centre = 0;
    for (std::size_t j = i + 1; j < m; ++j) centre += q(i, j) * x[j];
    const Rational t = remaining[level] / q(i, i);
    const Integer root = isqrt(t.get_num() * t.get_den()) / t.get_den();
    Integer lo = ceil_of(-centre) - root - 1;
    Integer hi = floor_of(-centre) + root + 1;
    auto fits = [&](const Integer& v) {
      Rational d = Rational(v) + centre;
      return d * d <= t;
    };
    while (lo <= hi && !fits(hi)) --hi;
    while (lo <= hi && !fits(lo)) ++lo;
    for (Integer v = lo; v <= hi; ++v) {
      x[i] = v.get_si();
      Rational d = Rational(v) + centre;
      remaining[i] = remaining[level] - q(i, i) * d * d;
      if (i == 0) {
        out.push_back(x);
      } else {
        self(self, i);
      }
    }
    x[i] = 0;
  };
  recurse(recurse, m);

  std::vector<std::pair<std::int64_t, IntVector>> keyed;
  keyed.reserve(out.size());
  for (auto& v : out) keyed.emplace_back(s.norm(v), std::move(v));
  std::sort(keyed.begin(), keyed.end());
  out.clear();
  for (auto& [norm, v] : keyed) out.push_back(std::move(v));
  return out;
}

GramMatrix DualGram::scaled_inverse() const {
  const std::size_t m = base.size();
  IntMatrix g(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      Rational v = inverse(i, j) * Rational(level);
      if (v.get_den() != 1) throw ContractError("scaled inverse is not integral");
      g(i, j) = v.get_num().get_si();
    }
  return GramMatrix(std::move(g));
}

DualGram dual_gram(const GramMatrix& s) {
  const auto dl = det_level(s);
  return DualGram{s, inverse(to_rational(s.matrix())), dl.level};
}

bool is_p_maximal(const GramMatrix& s, std::int64_t p) {
  require_odd_prime(p, "is_p_maximal");
  const auto kernel = fp_kernel(FpMatrix::reduce(s.matrix(), p));
  const std::size_t k = kernel.size();
  if (k == 0) return true;
  Integer count = int_pow(p, static_cast<unsigned>(k));
  if (count > 10'000'000) throw InputError("is_p_maximal: radical mod p too large to enumerate");

  const std::size_t m = s.size();
  const Integer modulus = Integer(2) * p * p;
  std::vector<std::int64_t> coeff(k, 0);
  const IntegerMatrix big = to_integer(s.matrix());
  while (true) {
    std::size_t pos = 0;
    while (pos < k && coeff[pos] == p - 1) coeff[pos++] = 0;
    if (pos == k) break;
    ++coeff[pos];

    std::vector<Integer> v(m, 0);
    for (std::size_t b = 0; b < k; ++b)
      for (std::size_t i = 0; i < m; ++i) v[i] += coeff[b] * kernel[b][i];
    for (auto& vi : v) mpz_mod_ui(vi.get_mpz_t(), vi.get_mpz_t(), static_cast<unsigned long>(p));
    Integer norm = 0;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) norm += v[i] * big(i, j) * v[j];
    if (mpz_divisible_p(norm.get_mpz_t(), modulus.get_mpz_t())) return false;
  }
  return true;
}

std::vector<Rational> rational_diagonal(const GramMatrix& s) {
  const auto minors = leading_principal_minors(to_integer(s.matrix()));
  std::vector<Rational> diag;
  Integer prev = 1;
  for (const auto& d : minors) {
    Rational a(d, prev);
    a.canonicalize();
    diag.push_back(a);
    prev = d;
  }
  return diag;
}

int hasse_witt_diagonal(std::span<const Rational> diagonal, const Place& v) {
  int s = 1;
  for (std::size_t i = 0; i < diagonal.size(); ++i)
    for (std::size_t j = i + 1; j < diagonal.size(); ++j) s *= hilbert_symbol(diagonal[i], diagonal[j], v);
  return s;
}

int hasse_witt(const GramMatrix& s, const Place& v) {
  const auto diag = rational_diagonal(s);
  return hasse_witt_diagonal(diag, v);
}

std::vector<Place> relevant_places(const GramMatrix& s) {
  std::vector<Place> places{Place::infinity(), Place::prime(2)};
  std::vector<Integer> primes;
  for (const auto& d : leading_principal_minors(to_integer(s.matrix())))
    for (const auto& q : prime_divisors(d))
      if (q != 2) primes.push_back(q);
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  for (const auto& q : primes) places.push_back(Place::prime(q.get_si()));
  return places;
}

bool IsometryCertificate::verify(const GramMatrix& s) const {
  if (isometry.rows() != s.size() || !isometry.is_square() || order < 2) return false;
  if (!(congruence_transform(s.matrix(), isometry) == s.matrix())) return false;
  const IntMatrix id = IntMatrix::identity(s.size());
  if (isometry == id) return false;
  IntMatrix power = id;
  for (std::int64_t k = 0; k < order; ++k) power = power * isometry;
  if (!(power == id)) return false;
  const bool no_fixed = determinant(isometry - id) != 0;
  return no_fixed == fixed_point_free;
}

SpecialLattice a_root_lattice(std::int64_t p) {
  require_odd_prime(p, "a_root_lattice");
  SpecialLattice out{root_lattice_a(static_cast<std::size_t>(p - 1)),
                     IsometryCertificate{companion_of_cyclotomic(p), p, true}};
  if (!out.certificate.verify(out.gram)) throw ContractError("a_root_lattice: isometry certificate failed");
  return out;
}

SpecialLattice p_special_lattice(std::int64_t p, int t) {
  require_odd_prime(p, "p_special_lattice");
  if (t < 1 || t > p - 2) throw InputError("p_special_lattice: need 1 <= t <= p-2");
  // A lattice of rank p-1 with a fixed-point-free isometry of order p is an
  // ideal lattice in Q(zeta_p) with form Tr(a x y~); its determinant is
  // p^(p-2) times a rational square, so only odd t occur.
  if (t % 2 == 0)
    throw ContractError("p_special_lattice: determinant p^" + std::to_string(t) +
                        " is not attainable, determinant must be an odd power of p");

  // Ideal (1 - zeta)^k with form Tr(x y~) / p, basis (1 - zeta)^k zeta^i.
  // The Gram entry (i, j) is the coefficient of zeta^(j-i) in (2 - zeta - zeta^-1)^k mod (zeta^p - 1).
  const int k = (t + 1) / 2;
  const std::size_t pp = static_cast<std::size_t>(p);
  std::vector<std::int64_t> poly(pp, 0);
  poly[0] = 1;
  for (int step = 0; step < k; ++step) {
    std::vector<std::int64_t> next(pp, 0);
    for (std::size_t e = 0; e < pp; ++e) {
      if (poly[e] == 0) continue;
      next[e] += 2 * poly[e];
      next[(e + 1) % pp] -= poly[e];
      next[(e + pp - 1) % pp] -= poly[e];
    }
    poly = std::move(next);
  }
  const std::size_t n = pp - 1;
  IntMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = poly[(j + pp - i) % pp];

  SpecialLattice out{GramMatrix(std::move(g)), IsometryCertificate{companion_of_cyclotomic(p), p, true}};

  const auto dl = det_level(out.gram);
  if (dl.determinant != int_pow(p, static_cast<unsigned>(t)))
    throw ContractError("p_special_lattice: determinant check failed");
  if (dl.level != p) throw ContractError("p_special_lattice: level check failed");
  if (!out.certificate.verify(out.gram)) throw ContractError("p_special_lattice: isometry certificate failed");
  return out;
}

std::size_t AutomorphismGroup::proper_order() const {
  return static_cast<std::size_t>(
      std::count_if(elements.begin(), elements.end(), [](const IntMatrix& u) { return determinant(u) == 1; }));
}

AutomorphismGroup automorphisms(const GramMatrix& s) {
  const std::size_t m = s.size();
  if (m > 12) throw InputError("automorphisms: rank above 12 is not supported");
  std::int64_t max_diag = 0;
  for (std::size_t i = 0; i < m; ++i) max_diag = std::max(max_diag, s(i, i));
  const auto vectors = enumerate_vectors(s, max_diag);

  // Candidate images of each basis vector, with S applied for fast inner products.
  std::vector<std::vector<std::size_t>> candidates(m);
  std::vector<IntVector> images;
  images.reserve(vectors.size());
  for (const auto& v : vectors) images.push_back(s.apply(v));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t c = 0; c < vectors.size(); ++c)
      if (s.norm(vectors[c]) == s(i, i)) candidates[i].push_back(c);

  AutomorphismGroup group;
  std::vector<std::size_t> chosen(m);
  auto extend = [&](auto&& self, std::size_t col) -> void {
    if (col == m) {
      IntMatrix u(m, m);
      for (std::size_t j = 0; j < m; ++j)
        for (std::size_t i = 0; i < m; ++i) u(i, j) = vectors[chosen[j]][i];
      group.elements.push_back(std::move(u));
      return;
    }
    for (std::size_t c : candidates[col]) {
      bool ok = true;
      for (std::size_t prev = 0; prev < col && ok; ++prev) {
        std::int64_t ip = 0;
        for (std::size_t i = 0; i < m; ++i) ip += vectors[c][i] * images[chosen[prev]][i];
        ok = ip == s(prev, col);
      }
      if (!ok) continue;
      chosen[col] = c;
      self(self, col + 1);
    }
  };
  extend(extend, 0);
  return group;
}

GramMatrix root_lattice_a(std::size_t n) {
  if (n == 0) throw InputError("root_lattice_a: n must be positive");
  IntMatrix g(n, n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    g(i, i) = 2;
    if (i + 1 < n) g(i, i + 1) = g(i + 1, i) = -1;
  }
  return GramMatrix(std::move(g));
}

GramMatrix root_lattice_e8() {
  // Dynkin diagram: chain 0-1-2-3-4-5-6 with node 7 attached to node 4.
  IntMatrix g(8, 8, 0);
  for (std::size_t i = 0; i < 8; ++i) g(i, i) = 2;
  auto link = [&](std::size_t a, std::size_t b) { g(a, b) = g(b, a) = -1; };
  for (std::size_t i = 0; i + 1 < 7; ++i) link(i, i + 1);
  link(4, 7);
  return GramMatrix(std::move(g));
}

}  // namespace thetakernel
