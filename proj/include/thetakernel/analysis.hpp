#pragma once

// Verification routines built on top of the expansion and lattice layers:
// Koecher-Maass averages, F_p dimensions, coset indices, Witt invariants of
// q S + A_{p-1}, the h-series at cusps, and congruence checks.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "thetakernel/lattice.hpp"
#include "thetakernel/qexp.hpp"

namespace thetakernel {

/// Largest tr(T) of a reduced T in Lambda_2 with det(2T) = d.
std::int64_t km_trace_bound(std::int64_t d);

/// a_d(f) = sum over SL_2(Z)-classes T with det(2T) = d of a(T) / eps+(T).
/// Degree 1: the coefficient at 2T = (d). Throws if the bound of f is too small.
Rational km_average(const QExpansion& f, std::int64_t d);

/// Number of Hermite normal forms [[a, 0], [c, d]] with a > 0, a|d| = m,
/// 0 <= c < |d|: the SL_2(Z)-classes of integer matrices of determinant +-m.
std::int64_t hermite_class_count(std::int64_t m);

enum class KmMode { divisible, vanishing };

struct KmReport {
  std::int64_t p = 0;
  std::int64_t d_max = 0;
  KmMode mode = KmMode::divisible;
  /// Sum of the combination coefficients is 0 mod p.
  bool coefficient_sum_ok = true;
  std::size_t checked = 0;
  /// Nonzero a_d in increasing d.
  std::vector<std::pair<std::int64_t, Rational>> nonzero;
  std::optional<std::int64_t> witness;

  bool pass() const { return coefficient_sum_ok && !witness; }
};

/// f = sum c_i series_i. divisible: nu_p(a_d(f)) >= 1 for all d <= d_max.
/// vanishing: a_d(f) = 0 for all d <= d_max.
KmReport km_divisibility_check(std::span<const Rational> coeffs, std::span<const QExpansion> series, std::int64_t p,
                               std::int64_t d_max, KmMode mode = KmMode::divisible);

/// Rank over F_p of the coefficient vectors (canonical index order) within the bound.
std::size_t fp_dimension(std::span<const QExpansion> family, std::int64_t p, std::int64_t bound);

/// [GL(n, F_p) : P_{n,j}(F_p)], P_{n,j} having a zero lower-left (n-j) x j block.
Integer coset_index_d(int n, int j, std::int64_t p);
/// prod_{i=1}^j (p^{j+i} - 1) / (p^i - 1); agrees with the index when n = 2j.
Rational coset_index_product(int j, std::int64_t p);
/// The index by enumerating GL(n, F_p). Small n and p only.
Integer coset_index_brute_force(int n, int j, std::int64_t p);
/// prod_{i=1}^n (1 + q^i).
Integer level_change_index(int n, std::int64_t q);

struct WittReport {
  std::int64_t p = 0;
  std::int64_t q = 0;
  int legendre_minus_p_q = 0;
  int s_q = 0;
  int s_infinity = 0;
  int s_2 = 0;
  int s_p = 0;
  /// Product of s_v over every place.
  int product = 0;

  bool pass() const;
};

/// Invariants of q S + A_{p-1} for an even S of even rank with det S = p.
WittReport witt_identity_check(const GramMatrix& s, std::int64_t p, std::int64_t q);

/// Smallest odd prime q != p below `limit` with (-p/q) = -1.
std::optional<std::int64_t> witt_auxiliary_prime(std::int64_t p, std::int64_t limit = 50);

struct CongruenceVerdict {
  bool pass = false;
  PadicValue nu_f = PadicValue::infinity();
  PadicValue nu_difference = PadicValue::infinity();
  std::optional<IndexMatrix> witness;
};

/// nu_p(f - g) >= 1 + nu_p(f) within the bound.
CongruenceVerdict congruence_check(const QExpansion& f, const QExpansion& g, std::int64_t p, std::int64_t bound,
                                   const std::optional<IndexMatrix>& probe = std::nullopt);

struct CuspReport {
  int cusp = 0;
  Rational constant_term;
  PadicValue nu = PadicValue::infinity();
  /// Required lower bound -i^2/2 + 1, in halves.
  std::int64_t required_halves = 0;
  /// p-exponent (halves) of the a_j-weighted prefactor of each term j = 0..n.
  std::vector<std::int64_t> exponent_halves;

  bool pass() const { return constant_term == 0 && (nu.is_infinite() || nu.halves() >= required_halves); }
};

struct ErratumReport {
  std::int64_t p = 0;
  int n = 0;
  std::int64_t bound = 0;
  std::vector<Rational> weights;
  CongruenceVerdict h_congruent_to_one;
  std::vector<CuspReport> cusps;

  bool pass() const;
};

/// a_j = (-1)^j p^((j^2+j)/2).
Rational erratum_weight(std::int64_t p, int j);

/// h = sum_j a_j theta^n(L_j), det L_j = p^(2j+1), and its expansions at the cusps.
ErratumReport erratum_h_series(std::int64_t p, int n, std::int64_t bound);

}  // namespace thetakernel
