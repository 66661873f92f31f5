#pragma once

// Exact integer and rational arithmetic helpers: primality, Legendre and
// Hilbert symbols, p-adic valuations (half-integer aware) and F_p linear
// algebra.

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "thetakernel/matrix.hpp"

namespace thetakernel {

/// Bad user input (non-prime modulus, zero Hilbert argument, ...).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A constructed object failed its own post-condition check.
class ContractError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Deterministic Miller-Rabin; exact for every 64-bit input.
bool is_prime(std::int64_t n);
void require_odd_prime(std::int64_t p, const char* context);

/// Legendre symbol (a/p) for an odd prime p.
int legendre(const Integer& a, std::int64_t p);
int legendre(std::int64_t a, std::int64_t p);

/// The quadratic character m -> (((-1)^((p-1)/2) p) / m) on integers m coprime to p.
int chi_p(const Integer& m, std::int64_t p);

/// Exponent of p in a nonzero integer.
std::int64_t valuation(const Integer& x, std::int64_t p);

/// nu_p stored doubled so that half-integer valuations stay exact.
class PadicValue {
 public:
  static PadicValue infinity() { return PadicValue(0, true); }
  static PadicValue from_integer(std::int64_t v) { return PadicValue(2 * v, false); }
  static PadicValue from_halves(std::int64_t halves) { return PadicValue(halves, false); }

  bool is_infinite() const { return infinite_; }
  std::int64_t halves() const;
  bool is_integral() const { return infinite_ || halves_ % 2 == 0; }
  /// Integer value; throws if the value is infinite or a proper half-integer.
  std::int64_t as_integer() const;

  PadicValue operator+(const PadicValue& rhs) const;
  PadicValue operator-() const;
  bool operator==(const PadicValue& rhs) const = default;
  std::strong_ordering operator<=>(const PadicValue& rhs) const;

  /// "inf", "3", "-5/2".
  std::string to_string() const;

 private:
  PadicValue(std::int64_t halves, bool infinite) : halves_(infinite ? 0 : halves), infinite_(infinite) {}
  std::int64_t halves_ = 0;
  bool infinite_ = false;
};

PadicValue valuation(const Rational& x, std::int64_t p);

/// p-integral rational reduced modulo p into [0, p-1].
std::int64_t reduce_mod_p(const Rational& x, std::int64_t p);

/// A place of Q: an odd prime, 2, or the real place.
class Place {
 public:
  static Place infinity() { return Place(0); }
  static Place prime(std::int64_t p);

  bool is_infinite() const { return p_ == 0; }
  std::int64_t prime_number() const { return p_; }
  bool operator==(const Place&) const = default;
  auto operator<=>(const Place&) const = default;
  std::string to_string() const;

 private:
  explicit Place(std::int64_t p) : p_(p) {}
  std::int64_t p_;
};

/// Hilbert symbol (a, b)_v for nonzero rationals.
int hilbert_symbol(const Rational& a, const Rational& b, const Place& v);

/// Distinct prime divisors of |n| in increasing order (n != 0).
std::vector<Integer> prime_divisors(const Integer& n);

/// Matrix of residues modulo an odd prime.
class FpMatrix {
 public:
  FpMatrix(std::int64_t p, std::size_t rows, std::size_t cols);
  static FpMatrix reduce(const IntegerMatrix& m, std::int64_t p);
  static FpMatrix reduce(const IntMatrix& m, std::int64_t p);

  std::int64_t prime() const { return p_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::int64_t at(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  void set(std::size_t i, std::size_t j, std::int64_t value);

 private:
  std::int64_t p_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::int64_t> entries_;
};

std::size_t fp_rank(const FpMatrix& m);

/// Basis of the right kernel {v : M v = 0} over F_p.
std::vector<std::vector<std::int64_t>> fp_kernel(const FpMatrix& m);

std::int64_t mod_pow(std::int64_t base, std::int64_t exp, std::int64_t mod);
Integer int_pow(std::int64_t base, unsigned exp);

}  // namespace thetakernel
