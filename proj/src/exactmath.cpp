#include "thetakernel/exactmath.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace thetakernel {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mul_mod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 pow_mod_u64(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

bool miller_rabin_witness(u64 n, u64 a, u64 d, int s) {
  u64 x = pow_mod_u64(a, d, n);
  if (x == 1 || x == n - 1) return false;
  for (int r = 1; r < s; ++r) {
    x = mul_mod(x, x, n);
    if (x == n - 1) return false;
  }
  return true;
}

// Jacobi symbol (a/n) for odd n > 0.
int jacobi(std::int64_t a, std::int64_t n) {
  a %= n;
  if (a < 0) a += n;
  int result = 1;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      const std::int64_t r = n % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

// Signed rational -> integer in the same square class (num * den).
Integer square_class_integer(const Rational& x) { return x.get_num() * x.get_den(); }

// x = p^alpha * u with p not dividing u.
std::int64_t split_power(const Integer& x, std::int64_t p, Integer& unit) {
  unit = x;
  std::int64_t alpha = 0;
  const Integer pp = static_cast<long>(p);
  while (mpz_divisible_p(unit.get_mpz_t(), pp.get_mpz_t())) {
    mpz_divexact(unit.get_mpz_t(), unit.get_mpz_t(), pp.get_mpz_t());
    ++alpha;
  }
  return alpha;
}

long residue_mod(const Integer& x, long m) {
  return static_cast<long>(mpz_fdiv_ui(x.get_mpz_t(), static_cast<unsigned long>(m)));
}

Integer pollard_brent(const Integer& n) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  for (unsigned long c = 1;; ++c) {
    Integer x = 2, y = 2, d = 1;
    auto step = [&](const Integer& v) {
      Integer r = v * v + c;
      mpz_mod(r.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t());
      return r;
    };
    while (d == 1) {
      x = step(x);
      y = step(step(y));
      Integer diff = abs(x - y);
      mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    }
    if (d != n) return d;
  }
}

void factor_into(const Integer& n, std::vector<Integer>& out) {
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 40) > 0) {
    out.push_back(n);
    return;
  }
  Integer d = pollard_brent(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t small : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n == small) return true;
    if (n % small == 0) return false;
  }
  u64 d = static_cast<u64>(n) - 1;
  int s = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++s;
  }
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL})
    if (miller_rabin_witness(static_cast<u64>(n), a, d, s)) return false;
  return true;
}

void require_odd_prime(std::int64_t p, const char* context) {
  if (p == 2 || !is_prime(p))
    throw InputError(std::string(context) + ": " + std::to_string(p) + " is not an odd prime");
}

int legendre(std::int64_t a, std::int64_t p) {
  require_odd_prime(p, "legendre");
  return jacobi(a, p);
}

int legendre(const Integer& a, std::int64_t p) {
  require_odd_prime(p, "legendre");
  return jacobi(residue_mod(a, p), p);
}

int chi_p(const Integer& m, std::int64_t p) {
  require_odd_prime(p, "chi_p");
  if (residue_mod(m, p) == 0) throw InputError("chi_p: argument not coprime to p");
  // p* = (-1)^((p-1)/2) p is 1 mod 4, so quadratic reciprocity gives (p*/m) = (m/p).
  return legendre(m, p);
}

std::int64_t valuation(const Integer& x, std::int64_t p) {
  if (x == 0) throw std::domain_error("valuation of zero integer");
  Integer unit;
  return split_power(x, p, unit);
}

std::int64_t PadicValue::halves() const {
  if (infinite_) throw std::domain_error("infinite valuation has no finite value");
  return halves_;
}

std::int64_t PadicValue::as_integer() const {
  if (infinite_ || halves_ % 2 != 0) throw std::domain_error("valuation is not an integer");
  return halves_ / 2;
}

PadicValue PadicValue::operator+(const PadicValue& rhs) const {
  if (infinite_ || rhs.infinite_) return infinity();
  return from_halves(halves_ + rhs.halves_);
}

PadicValue PadicValue::operator-() const {
  if (infinite_) throw std::domain_error("cannot negate infinite valuation");
  return from_halves(-halves_);
}

std::strong_ordering PadicValue::operator<=>(const PadicValue& rhs) const {
  if (infinite_ && rhs.infinite_) return std::strong_ordering::equal;
  if (infinite_) return std::strong_ordering::greater;
  if (rhs.infinite_) return std::strong_ordering::less;
  return halves_ <=> rhs.halves_;
}

std::string PadicValue::to_string() const {
  if (infinite_) return "inf";
  if (halves_ % 2 == 0) return std::to_string(halves_ / 2);
  return std::to_string(halves_) + "/2";
}

PadicValue valuation(const Rational& x, std::int64_t p) {
  if (x == 0) return PadicValue::infinity();
  return PadicValue::from_integer(valuation(x.get_num(), p) - valuation(x.get_den(), p));
}

std::int64_t reduce_mod_p(const Rational& x, std::int64_t p) {
  const long num = residue_mod(x.get_num(), p);
  const long den = residue_mod(x.get_den(), p);
  if (den == 0) throw std::domain_error("rational is not p-integral");
  const std::int64_t inv = mod_pow(den, p - 2, p);
  return static_cast<std::int64_t>((static_cast<__int128>(num) * inv) % p);
}

Place Place::prime(std::int64_t p) {
  if (!is_prime(p)) throw InputError("place must be a prime or infinity: " + std::to_string(p));
  return Place(p);
}

std::string Place::to_string() const { return p_ == 0 ? "inf" : std::to_string(p_); }

int hilbert_symbol(const Rational& a, const Rational& b, const Place& v) {
  if (a == 0 || b == 0) throw InputError("hilbert_symbol: arguments must be nonzero");
  const Integer x = square_class_integer(a);
  const Integer y = square_class_integer(b);
  if (v.is_infinite()) return (x < 0 && y < 0) ? -1 : 1;

  const std::int64_t p = v.prime_number();
  Integer u, w;
  const std::int64_t alpha = split_power(x, p, u);
  const std::int64_t beta = split_power(y, p, w);
  if (p == 2) {
    const long u8 = residue_mod(u, 8);
    const long w8 = residue_mod(w, 8);
    auto eps = [](long r) { return ((r - 1) / 2) % 2; };
    auto omega = [](long r) { return ((r * r - 1) / 8) % 2; };
    const long e = eps(u8) * eps(w8) + (alpha % 2) * omega(w8) + (beta % 2) * omega(u8);
    return e % 2 == 0 ? 1 : -1;
  }
  int result = 1;
  if ((alpha % 2) && (beta % 2) && ((p - 1) / 2) % 2) result = -result;
  if (beta % 2) result *= jacobi(residue_mod(u, p), p);
  if (alpha % 2) result *= jacobi(residue_mod(w, p), p);
  return result;
}

std::vector<Integer> prime_divisors(const Integer& n) {
  if (n == 0) throw std::domain_error("prime_divisors of zero");
  Integer rest = abs(n);
  std::vector<Integer> primes;
  for (long d = 2; d < 10000 && Integer(d) * d <= rest; ++d) {
    if (mpz_divisible_ui_p(rest.get_mpz_t(), static_cast<unsigned long>(d))) {
      primes.emplace_back(d);
      while (mpz_divisible_ui_p(rest.get_mpz_t(), static_cast<unsigned long>(d)))
        mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), static_cast<unsigned long>(d));
    }
  }
  std::vector<Integer> large;
  factor_into(rest, large);
  primes.insert(primes.end(), large.begin(), large.end());
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  return primes;
}

FpMatrix::FpMatrix(std::int64_t p, std::size_t rows, std::size_t cols)
    : p_(p), rows_(rows), cols_(cols), entries_(rows * cols, 0) {
  require_odd_prime(p, "FpMatrix");
}

FpMatrix FpMatrix::reduce(const IntegerMatrix& m, std::int64_t p) {
  FpMatrix out(p, m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out.entries_[i * out.cols_ + j] = residue_mod(m(i, j), p);
  return out;
}

FpMatrix FpMatrix::reduce(const IntMatrix& m, std::int64_t p) { return reduce(to_integer(m), p); }

void FpMatrix::set(std::size_t i, std::size_t j, std::int64_t value) {
  value %= p_;
  if (value < 0) value += p_;
  entries_[i * cols_ + j] = value;
}

namespace {

// In-place reduced row echelon form; returns pivot columns.
std::vector<std::size_t> rref(std::vector<std::int64_t>& a, std::size_t rows, std::size_t cols, std::int64_t p) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t col = 0; col < cols && r < rows; ++col) {
    std::size_t pivot = r;
    while (pivot < rows && a[pivot * cols + col] == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(a[r * cols + j], a[pivot * cols + j]);
    const std::int64_t inv = mod_pow(a[r * cols + col], p - 2, p);
    for (std::size_t j = 0; j < cols; ++j) a[r * cols + j] = a[r * cols + j] * inv % p;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      const std::int64_t f = a[i * cols + col];
      if (f == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) {
        a[i * cols + j] = (a[i * cols + j] - f * a[r * cols + j]) % p;
        if (a[i * cols + j] < 0) a[i * cols + j] += p;
      }
    }
    pivots.push_back(col);
    ++r;
  }
  return pivots;
}

std::vector<std::int64_t> entries_of(const FpMatrix& m) {
  std::vector<std::int64_t> a(m.rows() * m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) a[i * m.cols() + j] = m.at(i, j);
  return a;
}

}  // namespace

std::size_t fp_rank(const FpMatrix& m) {
  auto a = entries_of(m);
  return rref(a, m.rows(), m.cols(), m.prime()).size();
}

std::vector<std::vector<std::int64_t>> fp_kernel(const FpMatrix& m) {
  auto a = entries_of(m);
  const std::int64_t p = m.prime();
  const auto pivots = rref(a, m.rows(), m.cols(), p);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<std::int64_t>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<std::int64_t> v(m.cols(), 0);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      const std::int64_t x = a[r * m.cols() + free];
      v[pivots[r]] = x == 0 ? 0 : p - x;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::int64_t mod_pow(std::int64_t base, std::int64_t exp, std::int64_t mod) {
  base %= mod;
  if (base < 0) base += mod;
  return static_cast<std::int64_t>(pow_mod_u64(static_cast<u64>(base), static_cast<u64>(exp), static_cast<u64>(mod)));
}

Integer int_pow(std::int64_t base, unsigned exp) {
  Integer out;
  const Integer b = static_cast<long>(base);
  mpz_pow_ui(out.get_mpz_t(), b.get_mpz_t(), exp);
  return out;
}

}  // namespace thetakernel
