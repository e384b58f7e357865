#include "pfib/poly.hpp"

#include <algorithm>
#include <sstream>

namespace pfib {

Monomial Monomial::var(int slot, int pow) {
  Monomial m;
  m.e[slot] = static_cast<std::int16_t>(pow);
  return m;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial m;
  for (int i = 0; i < kNumVars; ++i) m.e[i] = static_cast<std::int16_t>(e[i] + o.e[i]);
  return m;
}

Bidegree Monomial::bidegree(const AmbientWeights& w) const {
  if (has_aux()) throw error("bidegree undefined for auxiliary symbols");
  long dt = tdeg();
  for (int i = 0; i < 5; ++i) dt -= static_cast<long>(w.a[i]) * x(i);
  return Bidegree{dt, static_cast<long>(xdeg())};
}

std::string variable_name(int slot) {
  if (slot < kXBase) return "t" + std::to_string(slot - kTBase);
  if (slot < kUBase) return "x" + std::to_string(slot - kXBase);
  return "u" + std::to_string(slot - kUBase);
}

std::string Monomial::str() const {
  std::string s;
  for (int i = 0; i < kNumVars; ++i) {
    if (e[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += variable_name(i);
    if (e[i] > 1) s += "^" + std::to_string(e[i]);
  }
  return s.empty() ? "1" : s;
}

bool MonomialOrder::operator()(const Monomial& a, const Monomial& b) const {
  // "Greater" monomials sort first so iteration prints the leading term first.
  int ax = a.xdeg(), bx = b.xdeg();
  if (ax != bx) return ax > bx;
  int at = a.tdeg(), bt = b.tdeg();
  if (at != bt) return at > bt;
  int au = a.udeg(), bu = b.udeg();
  if (au != bu) return au > bu;
  return a.e > b.e;
}

Polynomial Polynomial::constant(const Scalar& c) {
  Polynomial p(c.field());
  p.add_term(Monomial::one(), c);
  return p;
}

Polynomial Polynomial::term(const Monomial& m, const Scalar& c) {
  Polynomial p(c.field());
  p.add_term(m, c);
  return p;
}

Polynomial Polynomial::variable(int slot, const FieldSpec& f) {
  return term(Monomial::var(slot), Scalar::one(f));
}

void Polynomial::add_term(const Monomial& m, const Scalar& c) {
  if (!(c.field() == field_)) throw error("mixed field modes");
  if (c.is_zero()) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  if (!(field_ == o.field_)) throw error("mixed field modes");
  Polynomial r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator-() const {
  Polynomial r(field_);
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

Polynomial Polynomial::scaled(const Scalar& c) const {
  Polynomial r(field_);
  if (c.is_zero()) return r;
  for (const auto& [m, k] : terms_) r.terms_.emplace(m, k * c);
  return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (!(field_ == o.field_)) throw error("mixed field modes");
  Polynomial r(field_);
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) r.add_term(ma * mb, ca * cb);
  return r;
}

bool Polynomial::operator==(const Polynomial& o) const {
  if (!(field_ == o.field_)) throw error("mixed field modes");
  return terms_ == o.terms_;
}

std::optional<Bidegree> Polynomial::bidegree(const AmbientWeights& w) const {
  if (terms_.empty()) throw error("bidegree of the zero polynomial");
  std::optional<Bidegree> d;
  for (const auto& [m, c] : terms_) {
    Bidegree md = m.bidegree(w);
    if (!d) d = md;
    else if (*d != md) return std::nullopt;
  }
  return d;
}

Polynomial Polynomial::substitute_t(const Scalar& tau0, const Scalar& tau1) const {
  Polynomial r(field_);
  for (const auto& [m, c] : terms_) {
    Scalar v = c;
    for (int k = 0; k < m.t(0); ++k) v *= tau0;
    for (int k = 0; k < m.t(1); ++k) v *= tau1;
    if (v.is_zero()) continue;
    Monomial mx = m;
    mx.e[0] = mx.e[1] = 0;
    r.add_term(mx, v);
  }
  return r;
}

Polynomial Polynomial::substitute_linear_x(const std::vector<std::vector<Scalar>>& mat) const {
  std::vector<Polynomial> images;
  for (int i = 0; i < 5; ++i) {
    Polynomial im(field_);
    for (int j = 0; j < 5; ++j)
      im.add_term(Monomial::x_power(j, 1), mat[i][j]);
    images.push_back(im);
  }
  Polynomial r(field_);
  for (const auto& [m, c] : terms_) {
    Monomial base = m;
    for (int i = 0; i < 5; ++i) base.e[kXBase + i] = 0;
    Polynomial t = Polynomial::term(base, c);
    for (int i = 0; i < 5; ++i)
      for (int k = 0; k < m.x(i); ++k) t = t * images[i];
    r = r + t;
  }
  return r;
}

Polynomial Polynomial::derivative(int slot) const {
  Polynomial r(field_);
  for (const auto& [m, c] : terms_) {
    if (m.e[slot] == 0) continue;
    Monomial d = m;
    d.e[slot] = static_cast<std::int16_t>(d.e[slot] - 1);
    r.add_term(d, c * Scalar::of_int(m.e[slot], field_));
  }
  return r;
}

Scalar Polynomial::evaluate(const std::array<Scalar, kNumVars>& point) const {
  Scalar acc = Scalar::zero(field_);
  for (const auto& [m, c] : terms_) {
    Scalar v = c;
    for (int i = 0; i < kNumVars; ++i)
      for (int k = 0; k < m.e[i]; ++k) v *= point[i];
    acc += v;
  }
  return acc;
}

Scalar Polynomial::evaluate_tx(const std::array<Scalar, 2>& tau, const std::array<Scalar, 5>& xi) const {
  std::array<Scalar, kNumVars> pt;
  pt.fill(Scalar::zero(field_));
  pt[0] = tau[0];
  pt[1] = tau[1];
  for (int i = 0; i < 5; ++i) pt[kXBase + i] = xi[i];
  return evaluate(pt);
}

std::string Polynomial::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    std::string cs = c.str();
    bool neg = !cs.empty() && cs[0] == '-';
    if (first) {
      if (neg) out << "-";
      first = false;
    } else {
      out << (neg ? " - " : " + ");
    }
    if (neg) cs = cs.substr(1);
    bool unit = (cs == "1");
    if (!unit || m == Monomial::one()) {
      out << cs;
      if (!(m == Monomial::one())) out << "*";
    }
    if (!(m == Monomial::one())) out << m.str();
  }
  return out.str();
}

std::vector<Monomial> monomial_basis(const Bidegree& d, const AmbientWeights& w) {
  if (d.dx < 0) throw error("monomial_basis needs d_x >= 0");
  std::vector<Monomial> out;
  std::array<int, 5> alpha{};
  // Enumerate all x-exponents with |alpha| = d_x.
  auto rec = [&](auto&& self, int pos, int rem) -> void {
    if (pos == 4) {
      alpha[4] = rem;
      long ttot = d.dt;
      for (int i = 0; i < 5; ++i) ttot += static_cast<long>(w.a[i]) * alpha[i];
      if (ttot >= 0) {
        for (long e0 = ttot; e0 >= 0; --e0) {
          Monomial m;
          m.e[0] = static_cast<std::int16_t>(e0);
          m.e[1] = static_cast<std::int16_t>(ttot - e0);
          for (int i = 0; i < 5; ++i) m.e[kXBase + i] = static_cast<std::int16_t>(alpha[i]);
          out.push_back(m);
        }
      }
      return;
    }
    for (int v = rem; v >= 0; --v) {
      alpha[pos] = v;
      self(self, pos + 1, rem - v);
    }
  };
  rec(rec, 0, static_cast<int>(d.dx));
  std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) {
    return MonomialOrder{}(a, b);
  });
  return out;
}

std::vector<Monomial> x_monomial_basis(int d) {
  std::vector<Monomial> out;
  if (d < 0) return out;
  std::array<int, 5> alpha{};
  auto rec = [&](auto&& self, int pos, int rem) -> void {
    if (pos == 4) {
      alpha[4] = rem;
      Monomial m;
      for (int i = 0; i < 5; ++i) m.e[kXBase + i] = static_cast<std::int16_t>(alpha[i]);
      out.push_back(m);
      return;
    }
    for (int v = rem; v >= 0; --v) {
      alpha[pos] = v;
      self(self, pos + 1, rem - v);
    }
  };
  rec(rec, 0, d);
  std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) {
    return MonomialOrder{}(a, b);
  });
  return out;
}

std::vector<std::vector<Scalar>> jacobian_at(const std::vector<Polynomial>& fs,
                                             const std::array<Scalar, 2>& tau,
                                             const std::array<Scalar, 5>& xi) {
  std::vector<std::vector<Scalar>> jac;
  for (const auto& f : fs) {
    std::vector<Scalar> row;
    for (int slot = 0; slot < 7; ++slot)
      row.push_back(f.derivative(slot).evaluate_tx(tau, xi));
    jac.push_back(std::move(row));
  }
  return jac;
}

}  // namespace pfib
