#pragma once

// Theta operators a(T) -> T^[r] a(T) and mod-p kernel certificates.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>

#include "thetakernel/lattice.hpp"
#include "thetakernel/qexp.hpp"

namespace thetakernel {

struct VectorValuedExpansion {
  int degree = 1;
  std::size_t r = 1;
  std::int64_t bound = 0;
  std::map<IndexMatrix, RationalMatrix> coefficients;
};

/// Coefficient at T is minors_matrix(T, r) * a(T). Needs denominator 1.
VectorValuedExpansion theta_operator(const QExpansion& f, std::size_t r);

struct KernelWitness {
  IndexMatrix index;
  std::size_t row = 0;
  std::size_t col = 0;
  Rational entry;
  RationalMatrix coefficient;
};

struct KernelCertificate {
  std::size_t r = 1;
  std::int64_t p = 0;
  std::int64_t bound = 0;
  bool pass = false;
  /// f is nonzero mod p within the bound.
  bool nonzero_mod_p = false;
  std::optional<KernelWitness> witness;
};

/// PASS iff every entry of T^[r] a(T), tr(T) <= bound, has nu_p >= 1 + nu_p(f)
/// and f is nonzero mod p. On failure the witness is the first failing index
/// in canonical order, or `probe` when that index fails.
KernelCertificate kernel_check(const QExpansion& f, std::size_t r, std::int64_t p, std::int64_t bound,
                               const std::optional<IndexMatrix>& probe = std::nullopt);

/// False iff some r' >= r fails after some smaller r'' >= r passed.
bool kernel_monotonicity_check(const QExpansion& f, std::size_t r, std::int64_t p, std::int64_t bound);

struct SingularRank {
  /// All coefficients vanish mod p within the bound.
  bool zero_mod_p = false;
  /// Largest rank of an index whose coefficient survives mod p.
  std::size_t rank = 0;
  bool singular = false;
  /// 2k - rank == 0 mod (p - 1); only meaningful when singular.
  bool weight_congruence = false;
};

SingularRank singular_rank_mod_p(const QExpansion& f, std::int64_t p, std::int64_t bound, std::int64_t weight);

struct LeadingCoefficient {
  RationalMatrix coefficient;
  std::size_t automorphism_count = 0;
  /// coefficient == #Aut(2S) * S^[r].
  bool matches = false;
  /// gcd(#Aut, p) == 1 and S^[r] is nonzero mod p.
  bool nonvanishing_claimed = false;
  bool nonzero_mod_p = false;

  bool ok() const { return matches && (!nonvanishing_claimed || nonzero_mod_p); }
};

/// Coefficient of Theta^[r](theta_{2S}) at the index S, where `twice_s` = 2S.
LeadingCoefficient leading_coefficient_check(const GramMatrix& twice_s, std::size_t r, std::int64_t p,
                                             std::int64_t bound);

}  // namespace thetakernel
