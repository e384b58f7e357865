#include "pfib/fiber.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "pfib/linalg.hpp"

namespace pfib {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

int x_degree_of(const Polynomial& p) {
  int d = -1;
  for (const auto& [m, c] : p.terms()) {
    if (d < 0) d = m.xdeg();
    if (m.xdeg() != d) throw error("fiber generator is not x-homogeneous");
  }
  return d;
}

// Rank of the span of the given x-homogeneous polynomials of degree d.
long span_rank(const std::vector<Polynomial>& polys, int d, const FieldSpec& f) {
  if (polys.empty()) return 0;
  std::vector<Monomial> basis = x_monomial_basis(d);
  std::map<Monomial, int, MonomialOrder> index;
  for (std::size_t i = 0; i < basis.size(); ++i) index[basis[i]] = static_cast<int>(i);
  FieldMatrix m(static_cast<int>(basis.size()), static_cast<int>(polys.size()), f);
  for (std::size_t j = 0; j < polys.size(); ++j)
    for (const auto& [mono, c] : polys[j].terms()) m.at(index.at(mono), static_cast<int>(j)) = c;
  return m.rank();
}

std::vector<Polynomial> degree_piece(const FiberIdeal& f, int d) {
  std::vector<Polynomial> out;
  const FieldSpec& field = f.gens.empty() ? FieldSpec::rationals() : f.gens[0].field();
  for (const Polynomial& g : f.gens) {
    int e = x_degree_of(g);
    if (e < 0 || e > d) continue;
    for (const Monomial& mult : x_monomial_basis(d - e))
      out.push_back(Polynomial::term(mult, Scalar::one(field)) * g);
  }
  return out;
}

}  // namespace

BasePoint BasePoint::of(const Scalar& a, const Scalar& b) {
  const FieldSpec& f = a.field();
  if (!a.is_zero()) return BasePoint{Scalar::one(f), b / a};
  if (b.is_zero()) throw error("(0:0) is not a base point");
  return BasePoint{Scalar::zero(f), Scalar::one(f)};
}

BasePoint BasePoint::one_zero(const FieldSpec& f) {
  return BasePoint{Scalar::one(f), Scalar::zero(f)};
}

BasePoint BasePoint::zero_one(const FieldSpec& f) {
  return BasePoint{Scalar::zero(f), Scalar::one(f)};
}

bool BasePoint::operator<(const BasePoint& o) const {
  if (!(t0 == o.t0)) return t0 < o.t0;
  return t1 < o.t1;
}

std::string BasePoint::str() const { return "(" + t0.str() + ":" + t1.str() + ")"; }

FiberIdeal specialize(const PfaffianModel& m, const BasePoint& p) {
  FiberIdeal out;
  out.point = p;
  for (const Polynomial& g : pfaffians(m).generators()) {
    Polynomial spec = g.substitute_t(p.t0, p.t1);
    if (spec.is_zero()) continue;
    // normalize the leading coefficient away
    out.gens.push_back(spec.scaled(spec.terms().begin()->second.inv()));
  }
  if (out.gens.empty()) throw error("all generators vanish at " + p.str());
  return out;
}

long graded_ideal_dim(const FiberIdeal& f, int d) {
  if (d > 4) throw error("graded_ideal_dim is bounded at degree 4");
  if (d < 0 || f.gens.empty()) return 0;
  return span_rank(degree_piece(f, d), d, f.gens[0].field());
}

long coker_mu_dim(const FiberIdeal& f) {
  const FieldSpec& field = f.gens[0].field();
  // image of mu: x-multiples of the degree-2 piece of the ideal
  std::vector<Polynomial> image;
  for (const Polynomial& q : degree_piece(f, 2))
    for (int i = 0; i < 5; ++i) image.push_back(Polynomial::variable(kXBase + i, field) * q);
  return graded_ideal_dim(f, 3) - span_rank(image, 3, field);
}

std::string verdict_name(FiberVerdict v) {
  switch (v) {
    case FiberVerdict::nontrigonal: return "nontrigonal";
    case FiberVerdict::trigonal: return "trigonal";
    default: return "anomalous";
  }
}

FiberClassification classify(const PfaffianModel& m, const BasePoint& p) {
  FiberIdeal f = specialize(m, p);
  FiberClassification c;
  c.point = p;
  c.quadric_dim = graded_ideal_dim(f, 2);
  c.cubic_dim = graded_ideal_dim(f, 3);
  c.coker_dim = coker_mu_dim(f);
  if (c.quadric_dim == 3 && c.cubic_dim == 15 && c.coker_dim == 0)
    c.verdict = FiberVerdict::nontrigonal;
  else if (c.quadric_dim == 3 && c.cubic_dim == 15 && c.coker_dim == 2)
    c.verdict = FiberVerdict::trigonal;
  else
    c.verdict = FiberVerdict::anomalous;
  return c;
}

std::vector<FiberClassification> scan(const PfaffianModel& m, std::vector<BasePoint> points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end(),
                           [](const BasePoint& a, const BasePoint& b) { return a == b; }),
               points.end());
  std::vector<FiberClassification> out;
  for (const BasePoint& p : points) out.push_back(classify(m, p));
  return out;
}

std::vector<BasePoint> random_base_points(std::uint64_t seed, int count, const FieldSpec& f) {
  std::uint64_t state = seed;
  std::set<std::pair<bool, std::uint64_t>> seen;
  std::vector<BasePoint> out;
  while (static_cast<int>(out.size()) < count) {
    std::uint64_t raw = splitmix64(state) % 1000003ULL + 1;  // avoid the special fibers at 0
    if (!seen.insert({true, raw}).second) continue;
    out.push_back(BasePoint{Scalar::one(f), Scalar::of_int(static_cast<long long>(raw), f)});
  }
  return out;
}

// ---- smoothness probe over a small auxiliary prime ----

namespace {

struct SmallTerm {
  std::array<int, 7> e;  // t0,t1,x0..x4
  long long c;           // coefficient mod q
};

long long lift_mod(const Scalar& s, long long q) {
  if (s.field().prime_mode) {
    std::uint64_t p = s.field().p;
    std::uint64_t r = s.residue();
    long long sym = (r > p / 2) ? -static_cast<long long>(p - r) : static_cast<long long>(r);
    return ((sym % q) + q) % q;
  }
  const BigRational& v = s.rational_value();
  BigInt num = boost::multiprecision::numerator(v) % q;
  BigInt den = boost::multiprecision::denominator(v) % q;
  long long n = ((static_cast<long long>(num) % q) + q) % q;
  long long d = ((static_cast<long long>(den) % q) + q) % q;
  if (d == 0) throw error("denominator not invertible modulo the probe prime");
  // Fermat inverse
  long long inv = 1, base = d, exp = q - 2;
  while (exp > 0) {
    if (exp & 1) inv = inv * base % q;
    base = base * base % q;
    exp >>= 1;
  }
  return n * inv % q;
}

std::vector<SmallTerm> reduce_poly(const Polynomial& p, long long q) {
  std::vector<SmallTerm> out;
  for (const auto& [m, c] : p.terms()) {
    SmallTerm t;
    for (int i = 0; i < 7; ++i) t.e[i] = m.e[i];
    t.c = lift_mod(c, q);
    if (t.c != 0) out.push_back(t);
  }
  return out;
}

long long eval_small(const std::vector<SmallTerm>& poly, const std::array<long long, 7>& pt,
                     long long q) {
  long long acc = 0;
  for (const SmallTerm& t : poly) {
    long long v = t.c;
    for (int i = 0; i < 7; ++i)
      for (int k = 0; k < t.e[i]; ++k) v = v * pt[i] % q;
    acc = (acc + v) % q;
  }
  return acc;
}

long long eval_small_deriv(const std::vector<SmallTerm>& poly, int slot,
                           const std::array<long long, 7>& pt, long long q) {
  long long acc = 0;
  for (const SmallTerm& t : poly) {
    if (t.e[slot] == 0) continue;
    long long v = t.c * (t.e[slot] % q) % q;
    for (int i = 0; i < 7; ++i) {
      int pow = (i == slot) ? t.e[i] - 1 : t.e[i];
      for (int k = 0; k < pow; ++k) v = v * pt[i] % q;
    }
    acc = (acc + v) % q;
  }
  return acc;
}

int rank_mod(std::vector<std::array<long long, 7>> rows, long long q) {
  int rank = 0;
  for (int col = 0; col < 7 && rank < static_cast<int>(rows.size()); ++col) {
    int pivot = -1;
    for (int i = rank; i < static_cast<int>(rows.size()); ++i)
      if (rows[i][col] % q != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    std::swap(rows[rank], rows[pivot]);
    long long inv = 1, base = rows[rank][col] % q, exp = q - 2;
    while (exp > 0) {
      if (exp & 1) inv = inv * base % q;
      base = base * base % q;
      exp >>= 1;
    }
    for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
      if (i == rank || rows[i][col] % q == 0) continue;
      long long factor = rows[i][col] * inv % q;
      for (int j = 0; j < 7; ++j) rows[i][j] = ((rows[i][j] - factor * rows[rank][j]) % q + q) % q;
    }
    ++rank;
  }
  return rank;
}

bool is_small_prime(long long q) {
  if (q < 2) return false;
  for (long long d = 2; d * d <= q; ++d)
    if (q % d == 0) return false;
  return true;
}

}  // namespace

SmoothnessReport smoothness_probe(const PfaffianModel& m, const BasePoint& p, long trials,
                                  std::uint64_t small_prime) {
  SmoothnessReport rep;
  if (trials <= 0) return rep;
  long long q = static_cast<long long>(small_prime);
  if (!is_small_prime(q) || q > 1000) throw error("probe prime must be a prime below 1000");

  std::vector<std::vector<SmallTerm>> gens;
  for (const Polynomial& g : pfaffians(m).generators()) gens.push_back(reduce_poly(g, q));
  std::array<long long, 7> pt{};
  pt[0] = lift_mod(p.t0, q);
  pt[1] = lift_mod(p.t1, q);

  long budget = trials;
  // Slice x0 = 1 and sweep the box; each surviving (x1..x4) is a fiber point.
  for (long long x1 = 0; x1 < q && budget > 0; ++x1)
    for (long long x2 = 0; x2 < q && budget > 0; ++x2)
      for (long long x3 = 0; x3 < q && budget > 0; ++x3) {
        --budget;
        for (long long x4 = 0; x4 < q; ++x4) {
          pt[2] = 1;
          pt[3] = x1;
          pt[4] = x2;
          pt[5] = x3;
          pt[6] = x4;
          bool on_fiber = true;
          for (const auto& g : gens)
            if (eval_small(g, pt, q) != 0) {
              on_fiber = false;
              break;
            }
          if (!on_fiber) continue;
          std::vector<std::array<long long, 7>> jac;
          for (const auto& g : gens) {
            std::array<long long, 7> row{};
            for (int s = 0; s < 7; ++s) row[s] = eval_small_deriv(g, s, pt, q);
            jac.push_back(row);
          }
          int r = rank_mod(jac, q);
          ++rep.points_checked;
          if (r != 3) {
            rep.status = SmoothnessReport::Status::fail;
            rep.witness = "x = (1," + std::to_string(x1) + "," + std::to_string(x2) + "," +
                          std::to_string(x3) + "," + std::to_string(x4) + ") mod " +
                          std::to_string(q) + ", jacobian rank " + std::to_string(r);
            return rep;
          }
        }
      }
  if (rep.points_checked > 0) rep.status = SmoothnessReport::Status::pass;
  return rep;
}

}  // namespace pfib
