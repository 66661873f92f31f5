#include "thetakernel/qexp.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace thetakernel {

IndexMatrix::IndexMatrix(std::size_t n, std::vector<std::int64_t> scaled) : n_(n), k_(std::move(scaled)) {
  if (k_.size() != n * n) throw InputError("IndexMatrix: expected n*n entries");
  for (std::size_t i = 0; i < n_; ++i) {
    trace_ += k_[i * n_ + i];
    for (std::size_t j = i + 1; j < n_; ++j)
      if (k_[i * n_ + j] != k_[j * n_ + i]) throw InputError("IndexMatrix: matrix must be symmetric");
  }
}

IndexMatrix::IndexMatrix(const IntMatrix& scaled) : IndexMatrix(scaled.rows(), scaled.data()) {
  if (!scaled.is_square()) throw InputError("IndexMatrix: matrix must be square");
}

IndexMatrix IndexMatrix::from_half_integral(const HalfIntegralMatrix& t) { return IndexMatrix(t.twice()); }

IntMatrix IndexMatrix::matrix() const {
  IntMatrix m(n_, n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) m(i, j) = (*this)(i, j);
  return m;
}

RationalMatrix IndexMatrix::to_rational(std::int64_t denominator) const {
  RationalMatrix t(n_, n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) {
      t(i, j) = Rational(static_cast<long>((*this)(i, j)), static_cast<unsigned long>(2 * denominator));
      t(i, j).canonicalize();
    }
  return t;
}

HalfIntegralMatrix IndexMatrix::half_integral() const { return HalfIntegralMatrix(matrix()); }

std::size_t IndexMatrix::rank() const { return thetakernel::rank(thetakernel::to_rational(matrix())); }

IndexMatrix IndexMatrix::scaled(std::int64_t factor) const {
  auto k = k_;
  for (auto& x : k) x *= factor;
  return IndexMatrix(n_, std::move(k));
}

std::string IndexMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < n_; ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < n_; ++j) os << (j ? "," : "") << (*this)(i, j);
    os << ']';
  }
  os << ']';
  return os.str();
}

Rational QExpansion::coefficient(const IndexMatrix& t) const {
  if (t.size() != static_cast<std::size_t>(degree)) throw InputError("coefficient: index has wrong size");
  if (!in_bound(t)) throw std::out_of_range("coefficient: index " + t.to_string() + " lies beyond the trace bound");
  auto it = coefficients.find(t);
  return it == coefficients.end() ? Rational(0) : it->second;
}

Rational QExpansion::constant_term() const {
  return coefficient(IndexMatrix(static_cast<std::size_t>(degree), std::vector<std::int64_t>(degree * degree, 0)));
}

namespace {

struct VectorPool {
  std::vector<IntVector> coords;
  std::vector<IntVector> images;
  std::vector<std::int64_t> diag;
  bool dual = false;
};

VectorPool lattice_pool(const GramMatrix& s, std::int64_t bound, std::int64_t den) {
  VectorPool pool;
  pool.coords = enumerate_vectors(s, 2 * bound);
  for (const auto& x : pool.coords) {
    pool.images.push_back(s.apply(x));
    pool.diag.push_back(den * s.norm(x));
  }
  return pool;
}

VectorPool dual_pool(const GramMatrix& g, std::int64_t bound, std::int64_t den) {
  VectorPool pool;
  pool.dual = true;
  pool.coords = enumerate_vectors(g, 2 * den * bound);
  for (const auto& y : pool.coords) {
    pool.images.push_back(g.apply(y));
    pool.diag.push_back(g.norm(y));
  }
  return pool;
}

std::int64_t dot(const IntVector& a, const IntVector& b) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

struct KeyHash {
  std::size_t operator()(const std::vector<std::int64_t>& k) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (auto x : k) h = (h ^ static_cast<std::size_t>(x)) * 0x100000001b3ULL;
    return h;
  }
};

// Enumerates column tuples (one vector per column, columns drawn from their
// pools) with total scaled trace at most 2 * den * bound, accumulating either
// tuple counts or det of the coordinate matrix.
QExpansion assemble(std::span<const VectorPool* const> pools, std::int64_t den, std::int64_t bound,
                    Harmonic harmonic, std::int64_t det_divisor) {
  const std::size_t n = pools.size();
  std::unordered_map<std::vector<std::int64_t>, std::int64_t, KeyHash> acc;
  std::vector<std::int64_t> key(n * (n + 1) / 2, 0);
  std::vector<std::size_t> chosen(n, 0);
  auto key_pos = [n](std::size_t i, std::size_t j) { return i * n - i * (i - 1) / 2 + (j - i); };

  auto weight = [&]() -> std::int64_t {
    if (harmonic == Harmonic::one) return 1;
    IntMatrix cols(n, n);
    for (std::size_t c = 0; c < n; ++c) {
      const auto& v = pools[c]->dual ? pools[c]->images[chosen[c]] : pools[c]->coords[chosen[c]];
      for (std::size_t r = 0; r < n; ++r) cols(r, c) = v[r];
    }
    return determinant(cols).get_si();
  };

  auto walk = [&](auto&& self, std::size_t col, std::int64_t remaining) -> void {
    if (col == n) {
      const std::int64_t w = weight();
      if (w == 0) return;
      auto it = acc.find(key);
      if (it == acc.end())
        acc.emplace(key, w);
      else
        it->second += w;
      return;
    }
    const VectorPool& pool = *pools[col];
    for (std::size_t idx = 0; idx < pool.coords.size(); ++idx) {
      if (pool.diag[idx] > remaining) break;
      chosen[col] = idx;
      key[key_pos(col, col)] = pool.diag[idx];
      for (std::size_t a = 0; a < col; ++a) {
        const VectorPool& other = *pools[a];
        std::int64_t value;
        if (!other.dual && !pool.dual)
          value = den * dot(other.coords[chosen[a]], pool.images[idx]);
        else if (!other.dual && pool.dual)
          value = den * dot(other.coords[chosen[a]], pool.coords[idx]);
        else if (other.dual && !pool.dual)
          value = den * dot(other.coords[chosen[a]], pool.coords[idx]);
        else
          value = dot(other.coords[chosen[a]], pool.images[idx]);
        key[key_pos(a, col)] = value;
      }
      self(self, col + 1, remaining - pool.diag[idx]);
    }
  };
  walk(walk, 0, 2 * den * bound);

  QExpansion out;
  out.degree = static_cast<int>(n);
  out.bound = bound;
  out.denominator = den;
  for (const auto& [upper, w] : acc) {
    if (w == 0) continue;
    std::vector<std::int64_t> full(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) full[i * n + j] = full[j * n + i] = upper[key_pos(i, j)];
    Rational value(static_cast<long>(w), static_cast<unsigned long>(det_divisor));
    value.canonicalize();
    out.coefficients.emplace(IndexMatrix(n, std::move(full)), value);
  }
  return out;
}

void check_degree_bound(int degree, std::int64_t bound) {
  if (degree < 1) throw InputError("degree must be positive");
  if (bound < 0) throw InputError("trace bound must be nonnegative");
}

std::int64_t prime_level(const GramMatrix& s) {
  const auto dl = det_level(s);
  if (!dl.level.fits_slong_p() || !is_prime(dl.level.get_si()) || dl.level == 2)
    throw InputError("level of S must be an odd prime, got " + dl.level.get_str());
  return dl.level.get_si();
}

Rational pow_rational(std::int64_t p, std::int64_t e) {
  Rational r(int_pow(p, static_cast<unsigned>(e < 0 ? -e : e)));
  return e < 0 ? Rational(1) / r : r;
}

}  // namespace

QExpansion theta_expansion(const GramMatrix& s, int degree, std::int64_t bound) {
  check_degree_bound(degree, bound);
  const VectorPool pool = lattice_pool(s, bound, 1);
  std::vector<const VectorPool*> pools(static_cast<std::size_t>(degree), &pool);
  return assemble(pools, 1, bound, Harmonic::one, 1);
}

QExpansion theta_det_expansion(const GramMatrix& s, int degree, std::int64_t bound) {
  check_degree_bound(degree, bound);
  if (s.size() != static_cast<std::size_t>(degree))
    throw InputError("theta_det_expansion: size of S must equal the degree");
  const VectorPool pool = lattice_pool(s, bound, 1);
  std::vector<const VectorPool*> pools(static_cast<std::size_t>(degree), &pool);
  return assemble(pools, 1, bound, Harmonic::det, 1);
}

QExpansion mixed_theta(const GramMatrix& s, int degree, int j, std::int64_t bound, Harmonic harmonic) {
  check_degree_bound(degree, bound);
  if (j < 0 || j > degree) throw InputError("mixed_theta: need 0 <= j <= degree");
  if (harmonic == Harmonic::det && s.size() != static_cast<std::size_t>(degree))
    throw InputError("mixed_theta: det harmonic needs size of S equal to the degree");
  if (j == 0) return harmonic == Harmonic::one ? theta_expansion(s, degree, bound)
                                               : theta_det_expansion(s, degree, bound);
  const std::int64_t p = prime_level(s);
  const GramMatrix g = dual_gram(s).scaled_inverse();
  const VectorPool lpool = lattice_pool(s, bound, p);
  const VectorPool dpool = dual_pool(g, bound, p);
  std::vector<const VectorPool*> pools;
  for (int c = 0; c < degree; ++c) pools.push_back(c < degree - j ? &lpool : &dpool);
  std::int64_t divisor = 1;
  if (harmonic == Harmonic::det)
    for (int c = 0; c < j; ++c) divisor *= p;
  return assemble(pools, p, bound, harmonic, divisor);
}

QExpansion slash_cusp(const GramMatrix& s, int degree, int j, std::int64_t bound, Harmonic harmonic) {
  if (j == 0) return mixed_theta(s, degree, 0, bound, harmonic);
  QExpansion f = mixed_theta(s, degree, j, bound, harmonic);
  const std::int64_t p = f.denominator;
  const Integer det = determinant(s.matrix());
  const std::int64_t vdet = valuation(det, p);
  if (hasse_witt(s, Place::prime(p)) == -1 && j % 2 == 1)
    for (auto& [t, a] : f.coefficients) a = -a;
  f.prime = p;
  f.prefactor_halves = -static_cast<std::int64_t>(j) * vdet;
  Integer unit = det;
  for (std::int64_t k = 0; k < vdet; ++k) unit /= p;
  f.unit_tag = UnitTag{p, j, static_cast<int>(vdet % 2), legendre(unit, p)};
  return f;
}

QExpansion constant_expansion(int degree, std::int64_t bound, const Rational& value) {
  check_degree_bound(degree, bound);
  QExpansion f;
  f.degree = degree;
  f.bound = bound;
  if (value != 0)
    f.coefficients.emplace(IndexMatrix(static_cast<std::size_t>(degree), std::vector<std::int64_t>(degree * degree, 0)),
                           value);
  return f;
}

QExpansion linear_combination(std::span<const Rational> coeffs, std::span<const QExpansion> series) {
  if (coeffs.size() != series.size() || series.empty())
    throw InputError("linear_combination: need matching nonempty coefficient and series lists");
  const QExpansion& first = series.front();
  std::int64_t prime = 0;
  std::int64_t min_halves = first.prefactor_halves;
  std::int64_t bound = first.bound;
  for (const auto& f : series) {
    if (f.degree != first.degree || f.denominator != first.denominator)
      throw InputError("linear_combination: degree or denominator mismatch");
    if (!(f.unit_tag == first.unit_tag)) throw InputError("linear_combination: unit tags differ");
    if (f.prefactor_halves != 0 || f.prime != 0) {
      if (prime != 0 && f.prime != 0 && f.prime != prime) throw InputError("linear_combination: prefactor primes differ");
      if (f.prime != 0) prime = f.prime;
    }
    min_halves = std::min(min_halves, f.prefactor_halves);
    bound = std::min(bound, f.bound);
  }
  QExpansion out;
  out.degree = first.degree;
  out.bound = bound;
  out.denominator = first.denominator;
  out.prime = prime;
  out.prefactor_halves = min_halves;
  out.unit_tag = first.unit_tag;
  for (std::size_t k = 0; k < series.size(); ++k) {
    const std::int64_t shift = series[k].prefactor_halves - min_halves;
    if (shift % 2 != 0) throw InputError("linear_combination: prefactors differ by a half-integer power");
    const Rational mult = coeffs[k] * (shift ? pow_rational(prime, shift / 2) : Rational(1));
    if (mult == 0) continue;
    for (const auto& [t, a] : series[k].coefficients) {
      if (!out.in_bound(t)) continue;
      Rational& slot = out.coefficients[t];
      slot += mult * a;
      if (slot == 0) out.coefficients.erase(t);
    }
  }
  return out;
}

QExpansion scale(const QExpansion& f, const Rational& c) {
  const Rational coeffs[] = {c};
  const QExpansion series[] = {f};
  return linear_combination(coeffs, series);
}

QExpansion truncate(const QExpansion& f, std::int64_t bound) {
  if (bound > f.bound) throw InputError("truncate: cannot extend beyond the computed bound");
  QExpansion out = f;
  out.bound = bound;
  for (auto it = out.coefficients.begin(); it != out.coefficients.end();) {
    if (!out.in_bound(it->first))
      it = out.coefficients.erase(it);
    else
      ++it;
  }
  return out;
}

QExpansion multiply(const QExpansion& f, const QExpansion& g) {
  if (f.degree != g.degree || f.denominator != 1 || g.denominator != 1 || f.prefactor_halves != 0 ||
      g.prefactor_halves != 0)
    throw InputError("multiply: need plain series of equal degree");
  QExpansion out;
  out.degree = f.degree;
  out.bound = std::min(f.bound, g.bound);
  for (const auto& [s, a] : f.coefficients) {
    if (!out.in_bound(s)) continue;
    for (const auto& [t, b] : g.coefficients) {
      if (s.scaled_trace() + t.scaled_trace() > 2 * out.bound) continue;
      std::vector<std::int64_t> sum = s.entries();
      for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += t.entries()[i];
      IndexMatrix key(s.size(), std::move(sum));
      Rational& slot = out.coefficients[key];
      slot += a * b;
      if (slot == 0) out.coefficients.erase(key);
    }
  }
  return out;
}

ResidueExpansion reduce_mod_p(const QExpansion& f, std::int64_t p) {
  require_odd_prime(p, "reduce_mod_p");
  if (f.prefactor_halves % 2 != 0) throw InputError("reduce_mod_p: half-integral prefactor");
  if (f.prefactor_halves != 0 && f.prime != p) throw InputError("reduce_mod_p: prefactor is a power of another prime");
  const Rational mult = f.prefactor_halves ? pow_rational(p, f.prefactor_halves / 2) : Rational(1);
  ResidueExpansion out{f.degree, f.bound, f.denominator, p, {}};
  for (const auto& [t, a] : f.coefficients) {
    const Rational v = a * mult;
    if (valuation(v, p) < PadicValue::from_integer(0))
      throw NotPIntegral("reduce_mod_p: coefficient at " + t.to_string() + " is not p-integral", t);
    const std::int64_t r = thetakernel::reduce_mod_p(v, p);
    if (r != 0) out.coefficients.emplace(t, r);
  }
  return out;
}

QExpansion dilate(const QExpansion& f, std::int64_t p, std::optional<std::int64_t> bound) {
  if (p < 2) throw InputError("dilate: factor must be at least 2");
  const std::int64_t new_bound = bound.value_or(p * f.bound);
  if (new_bound > p * f.bound) throw InputError("dilate: requested bound exceeds p * bound");
  QExpansion out = f;
  out.bound = new_bound;
  out.coefficients.clear();
  for (const auto& [t, a] : f.coefficients) {
    IndexMatrix k = t.scaled(p);
    if (out.in_bound(k)) out.coefficients.emplace(std::move(k), a);
  }
  return out;
}

ResidueExpansion dilate(const ResidueExpansion& f, std::int64_t p, std::optional<std::int64_t> bound) {
  const std::int64_t new_bound = bound.value_or(p * f.bound);
  if (new_bound > p * f.bound) throw InputError("dilate: requested bound exceeds p * bound");
  ResidueExpansion out{f.degree, new_bound, f.denominator, f.p, {}};
  for (const auto& [t, a] : f.coefficients) {
    IndexMatrix k = t.scaled(p);
    if (k.scaled_trace() <= 2 * out.denominator * new_bound) out.coefficients.emplace(std::move(k), a);
  }
  return out;
}

PadicValue nu_p(const QExpansion& f, std::int64_t p) {
  if (f.prefactor_halves != 0 && f.prime != p) throw InputError("nu_p: prefactor is a power of another prime");
  PadicValue best = PadicValue::infinity();
  for (const auto& [t, a] : f.coefficients) best = std::min(best, valuation(a, p));
  return best + PadicValue::from_halves(f.prefactor_halves);
}

}  // namespace thetakernel
