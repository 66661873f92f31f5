#include "thetakernel/analysis.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

#include "thetakernel/bqf.hpp"

namespace thetakernel {

std::int64_t km_trace_bound(std::int64_t d) {
  if (d <= 0) throw InputError("km_trace_bound: d must be positive");
  switch (d % 4) {
    case 0: return 1 + d / 4;
    case 3: return 1 + (d + 1) / 4;
    default: return 0;
  }
}

Rational km_average(const QExpansion& f, std::int64_t d) {
  if (d <= 0) throw InputError("km_average: d must be positive");
  if (f.denominator != 1 || f.prefactor_halves != 0) throw InputError("km_average: expansion must be plain");
  if (f.degree == 1) {
    if (d % 2 != 0) return 0;
    const IndexMatrix t(1, {d});
    if (!f.in_bound(t)) throw InputError("km_average: bound " + std::to_string(f.bound) + " too small for d = " + std::to_string(d));
    return f.coefficient(t);
  }
  if (f.degree != 2) throw InputError("km_average: only degrees 1 and 2 are supported");
  if (d % 4 == 1 || d % 4 == 2) return 0;
  if (km_trace_bound(d) > f.bound)
    throw InputError("km_average: bound " + std::to_string(f.bound) + " too small for d = " + std::to_string(d));
  Rational sum = 0;
  for (const auto& cls : class_representatives(-d)) {
    const IndexMatrix t = IndexMatrix::from_half_integral(cls.form.matrix());
    auto it = f.coefficients.find(t);
    if (it == f.coefficients.end()) continue;
    sum += it->second / Rational(static_cast<long>(epsilon_plus(cls.form.matrix())));
  }
  return sum;
}

std::int64_t hermite_class_count(std::int64_t m) {
  if (m < 1) throw InputError("hermite_class_count: m must be positive");
  std::int64_t count = 0;
  for (std::int64_t a = 1; a <= m; ++a) {
    if (m % a != 0) continue;
    for (std::int64_t d : {m / a, -m / a})
      for (std::int64_t c = 0; c < std::abs(d); ++c) ++count;
  }
  return count;
}

KmReport km_divisibility_check(std::span<const Rational> coeffs, std::span<const QExpansion> series, std::int64_t p,
                               std::int64_t d_max, KmMode mode) {
  require_odd_prime(p, "km_divisibility_check");
  if (d_max < 1) throw InputError("km_divisibility_check: d_max must be positive");
  const QExpansion f = linear_combination(coeffs, series);
  KmReport report;
  report.p = p;
  report.d_max = d_max;
  report.mode = mode;
  if (mode == KmMode::divisible) {
    Rational total = 0;
    for (const auto& c : coeffs) total += c;
    report.coefficient_sum_ok = total == 0 || valuation(total, p) >= PadicValue::from_integer(1);
  }
  for (std::int64_t d = 1; d <= d_max; ++d) {
    const Rational a = km_average(f, d);
    ++report.checked;
    if (a == 0) continue;
    report.nonzero.emplace_back(d, a);
    const bool ok = mode == KmMode::divisible && valuation(a, p) >= PadicValue::from_integer(1);
    if (!ok && !report.witness) report.witness = d;
  }
  return report;
}

std::size_t fp_dimension(std::span<const QExpansion> family, std::int64_t p, std::int64_t bound) {
  require_odd_prime(p, "fp_dimension");
  if (family.empty()) return 0;
  std::vector<ResidueExpansion> rows;
  std::set<IndexMatrix> keys;
  for (const auto& f : family) {
    if (f.degree != family.front().degree || f.denominator != 1)
      throw InputError("fp_dimension: family must share degree and have denominator 1");
    if (bound > f.bound) throw InputError("fp_dimension: bound exceeds a computed bound");
    rows.push_back(reduce_mod_p(truncate(f, bound), p));
    for (const auto& [t, a] : rows.back().coefficients) keys.insert(t);
  }
  FpMatrix m(p, rows.size(), keys.size());
  std::size_t col = 0;
  for (const auto& t : keys) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      auto it = rows[i].coefficients.find(t);
      if (it != rows[i].coefficients.end()) m.set(i, col, it->second);
    }
    ++col;
  }
  return fp_rank(m);
}

Integer coset_index_d(int n, int j, std::int64_t p) {
  if (j < 0 || j > n) throw InputError("coset_index_d: need 0 <= j <= n");
  require_odd_prime(p, "coset_index_d");
  Integer num = 1, den = 1;
  for (int i = 1; i <= j; ++i) {
    num *= int_pow(p, static_cast<unsigned>(n - j + i)) - 1;
    den *= int_pow(p, static_cast<unsigned>(i)) - 1;
  }
  return num / den;
}

Rational coset_index_product(int j, std::int64_t p) {
  if (j < 0) throw InputError("coset_index_product: need j >= 0");
  Rational out = 1;
  for (int i = 1; i <= j; ++i)
    out *= Rational(int_pow(p, static_cast<unsigned>(j + i)) - 1) / Rational(int_pow(p, static_cast<unsigned>(i)) - 1);
  return out;
}

Integer coset_index_brute_force(int n, int j, std::int64_t p) {
  if (n < 1 || j < 0 || j > n) throw InputError("coset_index_brute_force: need 0 <= j <= n, n >= 1");
  require_odd_prime(p, "coset_index_brute_force");
  const std::size_t cells = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  if (int_pow(p, static_cast<unsigned>(cells)) > 2000000) throw InputError("coset_index_brute_force: too large");
  std::vector<std::int64_t> digits(cells, 0);
  std::int64_t group = 0, parabolic = 0;
  while (true) {
    FpMatrix m(p, n, n);
    for (std::size_t k = 0; k < cells; ++k) m.set(k / n, k % n, digits[k]);
    if (fp_rank(m) == static_cast<std::size_t>(n)) {
      ++group;
      bool in_p = true;
      for (int r = j; r < n && in_p; ++r)
        for (int c = 0; c < j; ++c)
          if (m.at(r, c) != 0) {
            in_p = false;
            break;
          }
      if (in_p) ++parabolic;
    }
    std::size_t k = 0;
    while (k < cells && ++digits[k] == p) digits[k++] = 0;
    if (k == cells) break;
  }
  return Integer(group / parabolic);
}

Integer level_change_index(int n, std::int64_t q) {
  Integer out = 1;
  for (int i = 1; i <= n; ++i) out *= 1 + int_pow(q, static_cast<unsigned>(i));
  return out;
}

bool WittReport::pass() const {
  return s_q == legendre_minus_p_q && s_infinity == 1 && product == 1 && (legendre_minus_p_q != -1 || s_p == -1);
}

WittReport witt_identity_check(const GramMatrix& s, std::int64_t p, std::int64_t q) {
  require_odd_prime(p, "witt_identity_check");
  require_odd_prime(q, "witt_identity_check");
  if (p == q) throw InputError("witt_identity_check: q must differ from p");
  if (s.size() % 2 != 0) throw InputError("witt_identity_check: S must have even rank");
  if (determinant(s.matrix()) != p) throw InputError("witt_identity_check: det S must equal p");
  const GramMatrix v = orthogonal_sum(s.scaled(q), a_root_lattice(p).gram);
  WittReport r;
  r.p = p;
  r.q = q;
  r.legendre_minus_p_q = legendre(-p, q);
  r.s_q = hasse_witt(v, Place::prime(q));
  r.s_infinity = hasse_witt(v, Place::infinity());
  r.s_2 = hasse_witt(v, Place::prime(2));
  r.s_p = hasse_witt(v, Place::prime(p));
  r.product = 1;
  for (const auto& place : relevant_places(v)) r.product *= hasse_witt(v, place);
  return r;
}

std::optional<std::int64_t> witt_auxiliary_prime(std::int64_t p, std::int64_t limit) {
  for (std::int64_t q = 3; q < limit; q += 2)
    if (q != p && is_prime(q) && legendre(-p, q) == -1) return q;
  return std::nullopt;
}

CongruenceVerdict congruence_check(const QExpansion& f, const QExpansion& g, std::int64_t p, std::int64_t bound,
                                   const std::optional<IndexMatrix>& probe) {
  require_odd_prime(p, "congruence_check");
  if (f.degree != g.degree || f.denominator != g.denominator) throw InputError("congruence_check: shape mismatch");
  if (bound > f.bound || bound > g.bound) throw InputError("congruence_check: bound exceeds a computed bound");
  const QExpansion ft = truncate(f, bound);
  const Rational coeffs[] = {1, -1};
  const QExpansion pair[] = {ft, truncate(g, bound)};
  const QExpansion diff = linear_combination(coeffs, pair);

  CongruenceVerdict v;
  v.nu_f = nu_p(ft, p);
  v.nu_difference = nu_p(diff, p);
  const PadicValue threshold = v.nu_f.is_infinite() ? PadicValue::infinity() : v.nu_f + PadicValue::from_integer(1);
  v.pass = v.nu_difference >= threshold;
  if (v.pass) return v;
  const PadicValue prefactor = PadicValue::from_halves(diff.prefactor_halves);
  auto fails = [&](const IndexMatrix& t) {
    auto it = diff.coefficients.find(t);
    return it != diff.coefficients.end() && valuation(it->second, p) + prefactor < threshold;
  };
  if (probe && diff.in_bound(*probe) && fails(*probe)) {
    v.witness = *probe;
    return v;
  }
  for (const auto& [t, a] : diff.coefficients)
    if (fails(t)) {
      v.witness = t;
      break;
    }
  return v;
}

Rational erratum_weight(std::int64_t p, int j) {
  Rational w(int_pow(p, static_cast<unsigned>((j * j + j) / 2)));
  return j % 2 ? Rational(-w) : w;
}

bool ErratumReport::pass() const {
  return h_congruent_to_one.pass && std::all_of(cusps.begin(), cusps.end(), [](const CuspReport& c) { return c.pass(); });
}

ErratumReport erratum_h_series(std::int64_t p, int n, std::int64_t bound) {
  require_odd_prime(p, "erratum_h_series");
  if (n < 1) throw InputError("erratum_h_series: n must be positive");
  if (p < 2 * n + 3) throw InputError("erratum_h_series: need p >= 2n + 3");
  ErratumReport report;
  report.p = p;
  report.n = n;
  report.bound = bound;
  std::vector<GramMatrix> lattices;
  for (int j = 0; j <= n; ++j) {
    lattices.push_back(p_special_lattice(p, 2 * j + 1).gram);
    report.weights.push_back(erratum_weight(p, j));
  }

  std::vector<QExpansion> thetas;
  for (const auto& l : lattices) thetas.push_back(theta_expansion(l, n, bound));
  const QExpansion h = linear_combination(report.weights, thetas);
  report.h_congruent_to_one = congruence_check(h, constant_expansion(n, bound), p, bound);

  for (int i = 1; i <= n; ++i) {
    CuspReport cusp;
    cusp.cusp = i;
    cusp.required_halves = -static_cast<std::int64_t>(i) * i + 2;
    std::vector<QExpansion> parts;
    for (int j = 0; j <= n; ++j) {
      parts.push_back(slash_cusp(lattices[j], n, i, bound));
      cusp.exponent_halves.push_back(parts.back().prefactor_halves + 2 * valuation(report.weights[j], p).as_integer());
    }
    const QExpansion combined = linear_combination(report.weights, parts);
    cusp.constant_term = combined.constant_term();
    cusp.nu = nu_p(combined, p);
    report.cusps.push_back(std::move(cusp));
  }
  return report;
}

}  // namespace thetakernel
