#include "pfib/scalar.hpp"

namespace pfib {
namespace detail {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t p) {
  if (a % p == 0) throw error("division by zero in F_p");
  // p is prime, so Fermat.
  return powmod(a, p - 2, p);
}

bool is_probable_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) { d >>= 1; ++s; }
  // Deterministic Miller-Rabin bases for 64-bit integers.
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) { witness = false; break; }
    }
    if (witness) return false;
  }
  return true;
}

}  // namespace detail

FieldSpec FieldSpec::prime(std::uint64_t p) {
  if (!detail::is_probable_prime(p)) throw error("modulus " + std::to_string(p) + " is not prime");
  if (p <= (1ULL << 30)) throw error("prime must exceed 2^30");
  FieldSpec f;
  f.prime_mode = true;
  f.p = p;
  return f;
}

std::string FieldSpec::describe() const {
  return prime_mode ? "F_" + std::to_string(p) : "QQ";
}

Scalar Scalar::zero(const FieldSpec& f) {
  Scalar s;
  s.field_ = f;
  return s;
}

Scalar Scalar::one(const FieldSpec& f) {
  Scalar s;
  s.field_ = f;
  if (f.prime_mode) s.r_ = 1;
  else s.q_ = 1;
  return s;
}

Scalar Scalar::of_int(long long v, const FieldSpec& f) {
  Scalar s;
  s.field_ = f;
  if (f.prime_mode) {
    long long m = v % static_cast<long long>(f.p);
    if (m < 0) m += static_cast<long long>(f.p);
    s.r_ = static_cast<std::uint64_t>(m);
  } else {
    s.q_ = v;
  }
  return s;
}

Scalar Scalar::of_fraction(const BigInt& num, const BigInt& den, const FieldSpec& f) {
  if (den == 0) throw error("zero denominator");
  Scalar s;
  s.field_ = f;
  if (f.prime_mode) {
    BigInt p(f.p);
    BigInt n = num % p;
    if (n < 0) n += p;
    BigInt d = den % p;
    if (d < 0) d += p;
    std::uint64_t dn = d.convert_to<std::uint64_t>();
    if (dn == 0) throw error("denominator divisible by the prime");
    s.r_ = detail::mulmod(n.convert_to<std::uint64_t>(), detail::invmod(dn, f.p), f.p);
  } else {
    s.q_ = BigRational(num, den);
  }
  return s;
}

Scalar Scalar::of_rational(const BigRational& q) {
  Scalar s;
  s.q_ = q;
  return s;
}

bool Scalar::is_zero() const { return field_.prime_mode ? r_ == 0 : q_ == 0; }
bool Scalar::is_one() const { return field_.prime_mode ? r_ == 1 : q_ == 1; }

void Scalar::check_compatible(const Scalar& o) const {
  if (!(field_ == o.field_)) throw error("mixed field modes");
}

Scalar Scalar::operator+(const Scalar& o) const {
  check_compatible(o);
  Scalar s;
  s.field_ = field_;
  if (field_.prime_mode) {
    std::uint64_t v = r_ + o.r_;
    if (v >= field_.p || v < r_) v -= field_.p;
    s.r_ = v;
  } else {
    s.q_ = q_ + o.q_;
  }
  return s;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
  check_compatible(o);
  Scalar s;
  s.field_ = field_;
  if (field_.prime_mode) s.r_ = detail::mulmod(r_, o.r_, field_.p);
  else s.q_ = q_ * o.q_;
  return s;
}

Scalar Scalar::operator-() const {
  Scalar s;
  s.field_ = field_;
  if (field_.prime_mode) s.r_ = r_ == 0 ? 0 : field_.p - r_;
  else s.q_ = -q_;
  return s;
}

Scalar Scalar::inv() const {
  if (is_zero()) throw error("inverse of zero");
  Scalar s;
  s.field_ = field_;
  if (field_.prime_mode) s.r_ = detail::invmod(r_, field_.p);
  else s.q_ = 1 / q_;
  return s;
}

bool Scalar::operator==(const Scalar& o) const {
  check_compatible(o);
  return field_.prime_mode ? r_ == o.r_ : q_ == o.q_;
}

bool Scalar::operator<(const Scalar& o) const {
  check_compatible(o);
  return field_.prime_mode ? r_ < o.r_ : q_ < o.q_;
}

const BigRational& Scalar::rational_value() const {
  if (field_.prime_mode) throw error("not a rational scalar");
  return q_;
}

std::uint64_t Scalar::residue() const {
  if (!field_.prime_mode) throw error("not a prime-field scalar");
  return r_;
}

std::string Scalar::str() const {
  if (field_.prime_mode) return std::to_string(r_);
  if (boost::multiprecision::denominator(q_) == 1)
    return boost::multiprecision::numerator(q_).str();
  return boost::multiprecision::numerator(q_).str() + "/" +
         boost::multiprecision::denominator(q_).str();
}

}  // namespace pfib
