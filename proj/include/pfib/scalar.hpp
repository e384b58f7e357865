#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace pfib {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Coefficient field for a whole computation: exact rationals, or F_p for a
// prime p > 2^30 so that random-evaluation checks are reliable.
struct FieldSpec {
  bool prime_mode = false;
  std::uint64_t p = 0;

  static FieldSpec rationals() { return FieldSpec{}; }
  static FieldSpec prime(std::uint64_t p);
  bool operator==(const FieldSpec&) const = default;
  std::string describe() const;
};

// Default primes for prime-field runs and cross-checks.
inline constexpr std::uint64_t kDefaultPrime = 2147483647ULL;           // 2^31 - 1
inline constexpr std::uint64_t kSecondPrime = 2305843009213693951ULL;   // 2^61 - 1

namespace detail {
std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p);
std::uint64_t invmod(std::uint64_t a, std::uint64_t p);
bool is_probable_prime(std::uint64_t n);
}  // namespace detail

// An exact field element. All arithmetic in the toolkit goes through this
// class; there is no floating point anywhere.
class Scalar {
 public:
  Scalar() = default;  // rational zero

  static Scalar zero(const FieldSpec& f);
  static Scalar one(const FieldSpec& f);
  static Scalar of_int(long long v, const FieldSpec& f);
  static Scalar of_fraction(const BigInt& num, const BigInt& den, const FieldSpec& f);
  static Scalar of_rational(const BigRational& q);

  const FieldSpec& field() const { return field_; }
  bool is_zero() const;
  bool is_one() const;

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator-() const;
  Scalar inv() const;
  Scalar operator/(const Scalar& o) const { return *this * o.inv(); }

  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }
  // Total order used only for deterministic sorting of reports.
  bool operator<(const Scalar& o) const;

  const BigRational& rational_value() const;
  std::uint64_t residue() const;

  std::string str() const;

 private:
  void check_compatible(const Scalar& o) const;

  FieldSpec field_ = FieldSpec::rationals();
  BigRational q_ = 0;
  std::uint64_t r_ = 0;
};

}  // namespace pfib
