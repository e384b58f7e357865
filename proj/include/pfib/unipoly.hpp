#pragma once

#include <string>
#include <vector>

#include "pfib/scalar.hpp"

namespace pfib {

// Dense univariate polynomial over the coefficient field; the variable is
// the chart coordinate t. k[t] is a Euclidean domain, which is all the
// Smith/Hermite machinery needs.
class UniPoly {
 public:
  explicit UniPoly(const FieldSpec& f = FieldSpec::rationals()) : field_(f) {}
  static UniPoly zero(const FieldSpec& f) { return UniPoly(f); }
  static UniPoly constant(const Scalar& c);
  static UniPoly t(const FieldSpec& f);
  static UniPoly monomial(const Scalar& c, int deg);
  static UniPoly from_coeffs(std::vector<Scalar> cs, const FieldSpec& f);

  const FieldSpec& field() const { return field_; }
  bool is_zero() const { return coeffs_.empty(); }
  // deg 0 = nonzero constant; -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  Scalar coeff(int i) const;
  const Scalar& leading() const;
  bool is_unit() const { return degree() == 0; }

  UniPoly operator+(const UniPoly& o) const;
  UniPoly operator-(const UniPoly& o) const;
  UniPoly operator*(const UniPoly& o) const;
  UniPoly operator-() const;
  UniPoly scaled(const Scalar& c) const;
  bool operator==(const UniPoly& o) const;
  bool operator!=(const UniPoly& o) const { return !(*this == o); }

  // Euclidean division: *this = q * d + r with deg r < deg d.
  struct DivMod;
  DivMod divmod(const UniPoly& d) const;
  // Exact division; throws if the remainder is nonzero.
  UniPoly divided_by(const UniPoly& d) const;

  UniPoly monic() const;
  Scalar eval(const Scalar& at) const;
  UniPoly derivative() const;

  // Multiplicity of the linear factor (t - c).
  int root_multiplicity(const Scalar& c) const;

  std::string str() const;

 private:
  void trim();

  FieldSpec field_;
  std::vector<Scalar> coeffs_;  // coeffs_[i] multiplies t^i; trailing zeros trimmed
};

struct UniPoly::DivMod {
  UniPoly quot;
  UniPoly rem;
};

UniPoly gcd(const UniPoly& a, const UniPoly& b);

}  // namespace pfib
