#include "pfib/unipoly.hpp"

#include <algorithm>
#include <sstream>

namespace pfib {

void UniPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

UniPoly UniPoly::constant(const Scalar& c) {
  UniPoly p(c.field());
  if (!c.is_zero()) p.coeffs_ = {c};
  return p;
}

UniPoly UniPoly::t(const FieldSpec& f) { return monomial(Scalar::one(f), 1); }

UniPoly UniPoly::monomial(const Scalar& c, int deg) {
  UniPoly p(c.field());
  if (c.is_zero()) return p;
  p.coeffs_.assign(deg + 1, Scalar::zero(c.field()));
  p.coeffs_[deg] = c;
  return p;
}

UniPoly UniPoly::from_coeffs(std::vector<Scalar> cs, const FieldSpec& f) {
  UniPoly p(f);
  p.coeffs_ = std::move(cs);
  p.trim();
  return p;
}

Scalar UniPoly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(coeffs_.size())) return Scalar::zero(field_);
  return coeffs_[i];
}

const Scalar& UniPoly::leading() const {
  if (coeffs_.empty()) throw error("leading coefficient of zero");
  return coeffs_.back();
}

UniPoly UniPoly::operator+(const UniPoly& o) const {
  if (!(field_ == o.field_)) throw error("mixed field modes");
  UniPoly r(field_);
  r.coeffs_.resize(std::max(coeffs_.size(), o.coeffs_.size()), Scalar::zero(field_));
  for (std::size_t i = 0; i < r.coeffs_.size(); ++i) r.coeffs_[i] = coeff(i) + o.coeff(i);
  r.trim();
  return r;
}

UniPoly UniPoly::operator-(const UniPoly& o) const { return *this + (-o); }

UniPoly UniPoly::operator-() const {
  UniPoly r(field_);
  r.coeffs_ = coeffs_;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

UniPoly UniPoly::scaled(const Scalar& c) const {
  if (c.is_zero()) return UniPoly(field_);
  UniPoly r(field_);
  r.coeffs_ = coeffs_;
  for (auto& k : r.coeffs_) k *= c;
  return r;
}

UniPoly UniPoly::operator*(const UniPoly& o) const {
  if (!(field_ == o.field_)) throw error("mixed field modes");
  if (is_zero() || o.is_zero()) return UniPoly(field_);
  UniPoly r(field_);
  r.coeffs_.assign(coeffs_.size() + o.coeffs_.size() - 1, Scalar::zero(field_));
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
      r.coeffs_[i + j] += coeffs_[i] * o.coeffs_[j];
  r.trim();
  return r;
}

bool UniPoly::operator==(const UniPoly& o) const {
  if (!(field_ == o.field_)) throw error("mixed field modes");
  if (coeffs_.size() != o.coeffs_.size()) return false;
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (coeffs_[i] != o.coeffs_[i]) return false;
  return true;
}

UniPoly::DivMod UniPoly::divmod(const UniPoly& d) const {
  if (d.is_zero()) throw error("division by zero polynomial");
  UniPoly rem = *this;
  UniPoly quot(field_);
  if (degree() >= d.degree())
    quot.coeffs_.assign(degree() - d.degree() + 1, Scalar::zero(field_));
  Scalar lead_inv = d.leading().inv();
  while (!rem.is_zero() && rem.degree() >= d.degree()) {
    int shift = rem.degree() - d.degree();
    Scalar q = rem.leading() * lead_inv;
    quot.coeffs_[shift] = q;
    for (int i = 0; i <= d.degree(); ++i)
      rem.coeffs_[i + shift] -= q * d.coeffs_[i];
    rem.trim();
  }
  quot.trim();
  return {quot, rem};
}

UniPoly UniPoly::divided_by(const UniPoly& d) const {
  auto [q, r] = divmod(d);
  if (!r.is_zero()) throw error("inexact polynomial division");
  return q;
}

UniPoly UniPoly::monic() const {
  if (is_zero()) return *this;
  return scaled(leading().inv());
}

Scalar UniPoly::eval(const Scalar& at) const {
  Scalar acc = Scalar::zero(field_);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * at + *it;
  return acc;
}

UniPoly UniPoly::derivative() const {
  UniPoly r(field_);
  for (std::size_t i = 1; i < coeffs_.size(); ++i)
    r.coeffs_.push_back(coeffs_[i] * Scalar::of_int(static_cast<long long>(i), field_));
  r.trim();
  return r;
}

int UniPoly::root_multiplicity(const Scalar& c) const {
  if (is_zero()) throw error("root multiplicity of zero polynomial");
  UniPoly lin = UniPoly::t(field_) - UniPoly::constant(c);
  UniPoly cur = *this;
  int m = 0;
  while (true) {
    auto [q, r] = cur.divmod(lin);
    if (!r.is_zero()) break;
    ++m;
    cur = q;
  }
  return m;
}

std::string UniPoly::str() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    if (coeffs_[i].is_zero()) continue;
    std::string cs = coeffs_[i].str();
    bool neg = !cs.empty() && cs[0] == '-';
    if (first) {
      if (neg) out << "-";
      first = false;
    } else {
      out << (neg ? " - " : " + ");
    }
    if (neg) cs = cs.substr(1);
    if (i == 0) {
      out << cs;
    } else {
      if (cs != "1") out << cs << "*";
      out << "t";
      if (i > 1) out << "^" << i;
    }
  }
  return out.str();
}

UniPoly gcd(const UniPoly& a, const UniPoly& b) {
  UniPoly x = a, y = b;
  while (!y.is_zero()) {
    UniPoly r = x.divmod(y).rem;
    x = y;
    y = r;
  }
  return x.monic();
}

}  // namespace pfib
