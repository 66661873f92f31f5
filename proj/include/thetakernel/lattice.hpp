#pragma once

// Even integral positive definite lattices given by Gram matrices.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "thetakernel/exactmath.hpp"
#include "thetakernel/matrix.hpp"

namespace thetakernel {

using IntVector = std::vector<std::int64_t>;

/// Even integral positive definite symmetric matrix S. The quadratic form is
/// S[x] = x^t S x, always even.
class GramMatrix {
 public:
  /// Validates symmetry, even diagonal and positive definiteness.
  explicit GramMatrix(IntMatrix entries);
  static GramMatrix from_rows(const std::vector<std::vector<std::int64_t>>& rows);

  std::size_t size() const { return s_.rows(); }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return s_(i, j); }
  const IntMatrix& matrix() const { return s_; }

  std::int64_t norm(std::span<const std::int64_t> x) const;
  std::int64_t inner(std::span<const std::int64_t> x, std::span<const std::int64_t> y) const;
  IntVector apply(std::span<const std::int64_t> x) const;

  GramMatrix scaled(std::int64_t factor) const;
  /// S[U] for an invertible integer matrix U.
  GramMatrix transformed(const IntMatrix& u) const;

  bool operator==(const GramMatrix&) const = default;

 private:
  IntMatrix s_;
};

GramMatrix orthogonal_sum(const GramMatrix& a, const GramMatrix& b);

/// Element T of Lambda_n, stored as the integer matrix 2T (symmetric, even diagonal).
class HalfIntegralMatrix {
 public:
  explicit HalfIntegralMatrix(IntMatrix twice);
  static HalfIntegralMatrix from_twice(const std::vector<std::vector<std::int64_t>>& rows);

  std::size_t size() const { return twice_.rows(); }
  const IntMatrix& twice() const { return twice_; }
  Rational entry(std::size_t i, std::size_t j) const;
  RationalMatrix to_rational() const;
  bool is_positive_definite() const;

  bool operator==(const HalfIntegralMatrix&) const = default;

 private:
  IntMatrix twice_;
};

struct DetLevel {
  Integer determinant;
  Integer level;
};

DetLevel det_level(const GramMatrix& s);

std::size_t rank_mod_p(const GramMatrix& s, std::int64_t p);

/// T^[r]: all r x r minors of T, row and column subsets in lexicographic order.
RationalMatrix minors_matrix(const RationalMatrix& t, std::size_t r);
RationalMatrix minors_matrix(const HalfIntegralMatrix& t, std::size_t r);

/// Every x with S[x] <= bound, each exactly once, sorted by (norm, entries).
std::vector<IntVector> enumerate_vectors(const GramMatrix& s, std::int64_t bound);

struct DualGram {
  GramMatrix base;
  RationalMatrix inverse;
  Integer level;

  /// level * S^{-1}, an even integral positive definite matrix.
  GramMatrix scaled_inverse() const;
};

DualGram dual_gram(const GramMatrix& s);

/// No y in (1/p)Z^m \ Z^m with S y integral and S[y] even.
bool is_p_maximal(const GramMatrix& s, std::int64_t p);

/// Diagonal a_1..a_m of S over Q (ratios of leading principal minors).
std::vector<Rational> rational_diagonal(const GramMatrix& s);

/// prod_{i<j} (a_i, a_j)_v for a diagonal form.
int hasse_witt_diagonal(std::span<const Rational> diagonal, const Place& v);
int hasse_witt(const GramMatrix& s, const Place& v);

/// Places at which hasse_witt may be nontrivial: infinity, 2 and odd primes
/// dividing the diagonal entries.
std::vector<Place> relevant_places(const GramMatrix& s);

struct IsometryCertificate {
  IntMatrix isometry;
  std::int64_t order = 0;
  bool fixed_point_free = false;

  /// Re-checks S[U] = S, U^order = 1 != U and det(U - 1) != 0.
  bool verify(const GramMatrix& s) const;
};

struct SpecialLattice {
  GramMatrix gram;
  IsometryCertificate certificate;
};

/// A_{p-1} with the order-p isometry coming from the cyclic shift of Z^p.
SpecialLattice a_root_lattice(std::int64_t p);

/// Rank p-1, level p, determinant p^t lattice with a fixed-point-free isometry of order p.
SpecialLattice p_special_lattice(std::int64_t p, int t);

struct AutomorphismGroup {
  std::vector<IntMatrix> elements;

  std::size_t order() const { return elements.size(); }
  std::size_t proper_order() const;
  bool has_improper() const { return proper_order() != order(); }
};

/// Complete list of U with S[U] = S. Rank at most 12.
AutomorphismGroup automorphisms(const GramMatrix& s);

/// Standard Gram matrices.
GramMatrix root_lattice_a(std::size_t n);
GramMatrix root_lattice_e8();

}  // namespace thetakernel
