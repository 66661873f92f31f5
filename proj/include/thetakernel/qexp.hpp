#pragma once

// Truncated Fourier expansions of Siegel-type series: sum_T a(T) e(tr(TZ)).
//
// An index T is stored as the integer matrix K = denominator * 2T. Within one
// expansion every key shares the same denominator, and truncation is by trace:
// a key is inside the expansion iff tr(T) <= bound. Missing keys inside the
// bound have coefficient zero; coefficients outside the bound are unknown.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "thetakernel/exactmath.hpp"
#include "thetakernel/lattice.hpp"

namespace thetakernel {

class IndexMatrix {
 public:
  IndexMatrix() = default;
  /// Row-major n x n symmetric entries of denominator * 2T.
  IndexMatrix(std::size_t n, std::vector<std::int64_t> scaled);
  explicit IndexMatrix(const IntMatrix& scaled);
  /// Denominator-one index of a half-integral matrix (K = 2T).
  static IndexMatrix from_half_integral(const HalfIntegralMatrix& t);

  std::size_t size() const { return n_; }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return k_[i * n_ + j]; }
  const std::vector<std::int64_t>& entries() const { return k_; }
  std::int64_t scaled_trace() const { return trace_; }

  IntMatrix matrix() const;
  /// T = K / (2 * denominator).
  RationalMatrix to_rational(std::int64_t denominator) const;
  HalfIntegralMatrix half_integral() const;
  std::size_t rank() const;
  IndexMatrix scaled(std::int64_t factor) const;
  std::string to_string() const;

  bool operator==(const IndexMatrix& rhs) const { return n_ == rhs.n_ && k_ == rhs.k_; }
  /// Canonical order: by trace, then lexicographically on the entries.
  bool operator<(const IndexMatrix& rhs) const {
    if (trace_ != rhs.trace_) return trace_ < rhs.trace_;
    return k_ < rhs.k_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<std::int64_t> k_;
  std::int64_t trace_ = 0;
};

/// Opaque unit factor (gamma_p)^exponent attached to cusp expansions. Only the
/// square class of the determinant it depends on is recorded.
struct UnitTag {
  std::int64_t prime = 0;
  std::int64_t exponent = 0;
  int det_valuation_parity = 0;
  int det_unit_character = 1;

  bool trivial() const { return exponent == 0; }
  bool operator==(const UnitTag&) const = default;
};

struct QExpansion {
  int degree = 1;
  std::int64_t bound = 0;
  std::int64_t denominator = 1;
  /// The whole series is multiplied by prime^(prefactor_halves / 2).
  std::int64_t prime = 0;
  std::int64_t prefactor_halves = 0;
  UnitTag unit_tag;
  std::map<IndexMatrix, Rational> coefficients;

  bool in_bound(const IndexMatrix& t) const { return t.scaled_trace() <= 2 * denominator * bound; }
  /// Coefficient inside the bound (zero if absent); throws outside the bound.
  Rational coefficient(const IndexMatrix& t) const;
  Rational constant_term() const;
  bool is_zero() const { return coefficients.empty(); }
};

/// Coefficients reduced modulo p; only nonzero residues are stored.
struct ResidueExpansion {
  int degree = 1;
  std::int64_t bound = 0;
  std::int64_t denominator = 1;
  std::int64_t p = 0;
  std::map<IndexMatrix, std::int64_t> coefficients;

  bool operator==(const ResidueExpansion&) const = default;
};

/// Thrown by reduce_mod_p when a coefficient has negative valuation.
class NotPIntegral : public std::domain_error {
 public:
  NotPIntegral(const std::string& what, IndexMatrix witness)
      : std::domain_error(what), witness_(std::move(witness)) {}
  const IndexMatrix& witness() const { return witness_; }

 private:
  IndexMatrix witness_;
};

enum class Harmonic { one, det };

/// a(T) = #{X in Z^(m,n) : S[X] = 2T} for tr(T) <= bound.
QExpansion theta_expansion(const GramMatrix& s, int degree, std::int64_t bound);

/// a(T) = sum of det X over X in Z^(n,n) with S[X] = 2T; S must have size n.
QExpansion theta_det_expansion(const GramMatrix& s, int degree, std::int64_t bound);

/// First degree - j columns in L, last j columns in the dual lattice. The
/// level of S must be prime; that prime is the denominator of the result.
QExpansion mixed_theta(const GramMatrix& s, int degree, int j, std::int64_t bound,
                       Harmonic harmonic = Harmonic::one);

/// Expansion in the cusp omega_j: mixed_theta times s_p(S)^j det(S)^(-j/2),
/// with gamma_p^j carried as an opaque unit tag.
QExpansion slash_cusp(const GramMatrix& s, int degree, int j, std::int64_t bound,
                      Harmonic harmonic = Harmonic::one);

QExpansion constant_expansion(int degree, std::int64_t bound, const Rational& value = 1);

QExpansion linear_combination(std::span<const Rational> coeffs, std::span<const QExpansion> series);
QExpansion scale(const QExpansion& f, const Rational& c);
QExpansion truncate(const QExpansion& f, std::int64_t bound);

/// Product of truncated series (denominator one, no prefactors).
QExpansion multiply(const QExpansion& f, const QExpansion& g);

ResidueExpansion reduce_mod_p(const QExpansion& f, std::int64_t p);

/// T -> coefficient at T/p. The new bound defaults to p * bound.
QExpansion dilate(const QExpansion& f, std::int64_t p, std::optional<std::int64_t> bound = std::nullopt);
ResidueExpansion dilate(const ResidueExpansion& f, std::int64_t p, std::optional<std::int64_t> bound = std::nullopt);

/// min nu_p of the stored coefficients plus the prefactor. Only a statement
/// about indices inside the bound.
PadicValue nu_p(const QExpansion& f, std::int64_t p);

}  // namespace thetakernel
