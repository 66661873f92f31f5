#pragma once

// Positive definite binary quadratic forms a x^2 + b x y + c y^2.

#include <cstdint>
#include <optional>
#include <vector>

#include "thetakernel/lattice.hpp"

namespace thetakernel {

struct BinaryForm {
  std::int64_t a = 0;
  std::int64_t b = 0;
  std::int64_t c = 0;

  std::int64_t discriminant() const { return b * b - 4 * a * c; }
  bool is_reduced() const;
  /// The half-integral matrix [[a, b/2], [b/2, c]].
  HalfIntegralMatrix matrix() const;
  /// Its double [[2a, b], [b, 2c]], an even Gram matrix.
  GramMatrix gram() const;
  BinaryForm conjugate() const { return {a, -b, c}; }

  bool operator==(const BinaryForm&) const = default;
  auto operator<=>(const BinaryForm&) const = default;
};

struct Reduction {
  BinaryForm form;
  /// form = original[transform], det(transform) = 1.
  IntMatrix transform;
};

Reduction reduce(const BinaryForm& f);

struct BinaryFormClass {
  BinaryForm form;
  bool ambiguous = false;
  /// Position of the class of (a, -b, c) in the same representative list.
  std::optional<std::size_t> gl_partner;
};

/// Reduced representatives of discriminant D < 0: ambiguous classes first,
/// then pairs (S, S-bar) ordered by (a, |b|), b > 0 first.
std::vector<BinaryFormClass> class_representatives(std::int64_t discriminant);
std::size_t class_number(std::int64_t discriminant);
std::vector<BinaryFormClass> ambiguous_classes(std::int64_t discriminant);
/// One form per GL(2, Z)-class: the ambiguous classes, then the b > 0 member of each pair.
std::vector<BinaryForm> gl_class_representatives(std::int64_t discriminant);

/// Number of U in SL(n, Z) with T[U] = T, for n = 1 or 2.
std::int64_t epsilon_plus(const HalfIntegralMatrix& t);

}  // namespace thetakernel
