#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pfib/scalar.hpp"

namespace pfib {

// Scroll twists (a0..a4) of the ruled ambient F(a0,...,a4); all-zero is
// P^1 x P^4. Grading convention: deg t_j = (1,0), deg x_i = (-a_i, 1).
struct AmbientWeights {
  std::array<int, 5> a{0, 0, 0, 0, 0};

  static AmbientWeights product_space() { return AmbientWeights{}; }
  bool is_product() const { return a == std::array<int, 5>{0, 0, 0, 0, 0}; }
  int sum() const { return a[0] + a[1] + a[2] + a[3] + a[4]; }
  bool operator==(const AmbientWeights&) const = default;
};

struct Bidegree {
  long dt = 0;
  long dx = 0;
  bool operator==(const Bidegree&) const = default;
  auto operator<=>(const Bidegree&) const = default;
  Bidegree operator+(const Bidegree& o) const { return {dt + o.dt, dx + o.dx}; }
  Bidegree operator-(const Bidegree& o) const { return {dt - o.dt, dx - o.dx}; }
  Bidegree operator-() const { return {-dt, -dx}; }
  Bidegree operator*(long k) const { return {dt * k, dx * k}; }
  std::string str() const { return "(" + std::to_string(dt) + "," + std::to_string(dx) + ")"; }
};

// Exponent vector over the fixed variable set:
//   slots 0,1   -> t0, t1
//   slots 2..6  -> x0..x4
//   slots 7..15 -> u0..u8, auxiliary symbols for identity checks with
//                  symbolic coefficients; never produced by the parser.
inline constexpr int kNumVars = 16;
inline constexpr int kTBase = 0;
inline constexpr int kXBase = 2;
inline constexpr int kUBase = 7;

struct Monomial {
  std::array<std::int16_t, kNumVars> e{};

  int t(int j) const { return e[kTBase + j]; }
  int x(int i) const { return e[kXBase + i]; }
  int u(int i) const { return e[kUBase + i]; }
  int tdeg() const { return e[0] + e[1]; }
  int xdeg() const { return e[2] + e[3] + e[4] + e[5] + e[6]; }
  int udeg() const {
    int s = 0;
    for (int i = kUBase; i < kNumVars; ++i) s += e[i];
    return s;
  }
  bool has_aux() const { return udeg() != 0; }

  static Monomial one() { return Monomial{}; }
  static Monomial var(int slot, int pow = 1);
  static Monomial t_power(int j, int pow) { return var(kTBase + j, pow); }
  static Monomial x_power(int i, int pow) { return var(kXBase + i, pow); }

  Monomial operator*(const Monomial& o) const;
  // Weighted bidegree under deg t_j = (1,0), deg x_i = (-a_i,1).
  // Requires no auxiliary symbols.
  Bidegree bidegree(const AmbientWeights& w) const;

  bool operator==(const Monomial&) const = default;
  std::string str() const;
};

// Canonical monomial order: by x-degree, then t-degree, then aux degree,
// then lexicographic on the exponent tuple. Bigger terms print first.
struct MonomialOrder {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

std::string variable_name(int slot);

// Sparse exact multivariate polynomial. Immutable value type; no zero
// coefficients are ever stored, so the map is the canonical form.
class Polynomial {
 public:
  using TermMap = std::map<Monomial, Scalar, MonomialOrder>;

  explicit Polynomial(const FieldSpec& f = FieldSpec::rationals()) : field_(f) {}
  static Polynomial zero(const FieldSpec& f) { return Polynomial(f); }
  static Polynomial constant(const Scalar& c);
  static Polynomial term(const Monomial& m, const Scalar& c);
  static Polynomial variable(int slot, const FieldSpec& f);

  const FieldSpec& field() const { return field_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial scaled(const Scalar& c) const;
  bool operator==(const Polynomial& o) const;
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  void add_term(const Monomial& m, const Scalar& c);

  // nullopt if the nonzero polynomial mixes bidegrees. Throws on zero input.
  std::optional<Bidegree> bidegree(const AmbientWeights& w) const;

  // Substitute (t0,t1) = (tau0,tau1); the result involves x only.
  Polynomial substitute_t(const Scalar& tau0, const Scalar& tau1) const;
  // Substitute x_i -> sum_j m[i][j] x_j (invertible coordinate change on x).
  Polynomial substitute_linear_x(const std::vector<std::vector<Scalar>>& m) const;
  Polynomial derivative(int slot) const;
  Scalar evaluate(const std::array<Scalar, kNumVars>& point) const;
  Scalar evaluate_tx(const std::array<Scalar, 2>& tau, const std::array<Scalar, 5>& xi) const;

  std::string str() const;

 private:
  FieldSpec field_;
  TermMap terms_;
};

// All monomials of weighted bidegree d, in canonical order. Empty when no
// monomial qualifies (e.g. negative t-room on every exponent choice).
std::vector<Monomial> monomial_basis(const Bidegree& d, const AmbientWeights& w);

// Monomials of total degree d in x0..x4 only, canonical order.
std::vector<Monomial> x_monomial_basis(int d);

// Jacobian of fs with respect to (t0,t1,x0..x4), evaluated at the given
// ambient point. Rows follow fs, columns the 7 variables.
std::vector<std::vector<Scalar>> jacobian_at(const std::vector<Polynomial>& fs,
                                             const std::array<Scalar, 2>& tau,
                                             const std::array<Scalar, 5>& xi);

}  // namespace pfib
