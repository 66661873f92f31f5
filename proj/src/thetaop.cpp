#include "thetakernel/thetaop.hpp"

#include <algorithm>

namespace thetakernel {

namespace {

void require_plain(const QExpansion& f, const char* context) {
  if (f.denominator != 1) throw InputError(std::string(context) + ": expansion must have denominator 1");
}

std::optional<KernelWitness> first_failure(const IndexMatrix& t, const RationalMatrix& c, std::int64_t p,
                                           const PadicValue& prefactor, const PadicValue& threshold) {
  for (std::size_t i = 0; i < c.rows(); ++i)
    for (std::size_t j = 0; j < c.cols(); ++j) {
      if (c(i, j) == 0) continue;
      if (valuation(c(i, j), p) + prefactor < threshold) return KernelWitness{t, i, j, c(i, j), c};
    }
  return std::nullopt;
}

}  // namespace

VectorValuedExpansion theta_operator(const QExpansion& f, std::size_t r) {
  require_plain(f, "theta_operator");
  if (r < 1 || r > static_cast<std::size_t>(f.degree)) throw InputError("theta_operator: need 1 <= r <= degree");
  VectorValuedExpansion out{f.degree, r, f.bound, {}};
  for (const auto& [t, a] : f.coefficients) {
    RationalMatrix m = minors_matrix(t.half_integral(), r).scaled(a);
    if (!m.is_zero()) out.coefficients.emplace(t, std::move(m));
  }
  return out;
}

KernelCertificate kernel_check(const QExpansion& f, std::size_t r, std::int64_t p, std::int64_t bound,
                               const std::optional<IndexMatrix>& probe) {
  require_odd_prime(p, "kernel_check");
  require_plain(f, "kernel_check");
  if (bound > f.bound) throw InputError("kernel_check: bound exceeds the computed bound of the expansion");
  const QExpansion g = truncate(f, bound);
  KernelCertificate cert{r, p, bound, false, false, std::nullopt};
  const PadicValue nu = nu_p(g, p);
  cert.nonzero_mod_p = nu == PadicValue::from_integer(0);
  const PadicValue threshold = nu.is_infinite() ? PadicValue::infinity() : nu + PadicValue::from_integer(1);
  const PadicValue prefactor = PadicValue::from_halves(g.prefactor_halves);

  const VectorValuedExpansion theta = theta_operator(g, r);
  if (probe && g.in_bound(*probe)) {
    auto it = theta.coefficients.find(*probe);
    if (it != theta.coefficients.end()) cert.witness = first_failure(it->first, it->second, p, prefactor, threshold);
  }
  if (!cert.witness) {
    for (const auto& [t, c] : theta.coefficients) {
      cert.witness = first_failure(t, c, p, prefactor, threshold);
      if (cert.witness) break;
    }
  }
  cert.pass = !cert.witness && cert.nonzero_mod_p;
  return cert;
}

bool kernel_monotonicity_check(const QExpansion& f, std::size_t r, std::int64_t p, std::int64_t bound) {
  bool passed = false;
  for (std::size_t s = r; s <= static_cast<std::size_t>(f.degree); ++s) {
    const bool pass = kernel_check(f, s, p, bound).pass;
    if (passed && !pass) return false;
    passed = passed || pass;
  }
  return true;
}

SingularRank singular_rank_mod_p(const QExpansion& f, std::int64_t p, std::int64_t bound, std::int64_t weight) {
  require_odd_prime(p, "singular_rank_mod_p");
  const ResidueExpansion res = reduce_mod_p(truncate(f, bound), p);
  SingularRank out;
  out.zero_mod_p = res.coefficients.empty();
  if (out.zero_mod_p) return out;
  for (const auto& [t, a] : res.coefficients) out.rank = std::max(out.rank, t.rank());
  out.singular = out.rank < static_cast<std::size_t>(f.degree);
  const std::int64_t diff = 2 * weight - static_cast<std::int64_t>(out.rank);
  out.weight_congruence = out.singular && diff % (p - 1) == 0;
  return out;
}

LeadingCoefficient leading_coefficient_check(const GramMatrix& twice_s, std::size_t r, std::int64_t p,
                                             std::int64_t bound) {
  require_odd_prime(p, "leading_coefficient_check");
  const IndexMatrix index(twice_s.matrix());
  if (index.scaled_trace() > 2 * bound) throw InputError("leading_coefficient_check: tr(S) exceeds the bound");
  const int n = static_cast<int>(twice_s.size());
  const QExpansion theta = theta_expansion(twice_s, n, bound);
  const HalfIntegralMatrix s(twice_s.matrix());

  LeadingCoefficient out;
  out.coefficient = minors_matrix(s, r).scaled(theta.coefficient(index));
  out.automorphism_count = automorphisms(twice_s).order();
  const RationalMatrix sr = minors_matrix(s, r);
  out.matches = out.coefficient == sr.scaled(Rational(static_cast<long>(out.automorphism_count)));

  auto nonzero_mod = [p](const RationalMatrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j)
        if (m(i, j) != 0 && valuation(m(i, j), p) <= PadicValue::from_integer(0)) return true;
    return false;
  };
  out.nonvanishing_claimed = out.automorphism_count % static_cast<std::size_t>(p) != 0 && nonzero_mod(sr);
  out.nonzero_mod_p = nonzero_mod(out.coefficient);
  return out;
}

}  // namespace thetakernel
