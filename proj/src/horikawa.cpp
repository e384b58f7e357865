#include "pfib/horikawa.hpp"

#include <algorithm>
#include <map>

namespace pfib {

namespace {

int x_degree_of(const Polynomial& p) {
  int d = -1;
  for (const auto& [m, c] : p.terms()) {
    if (d < 0) d = m.xdeg();
    if (m.xdeg() != d) throw error("chart modules need x-homogeneous generators");
  }
  return d;
}

std::map<Monomial, int, MonomialOrder> index_of(const std::vector<Monomial>& basis) {
  std::map<Monomial, int, MonomialOrder> idx;
  for (std::size_t i = 0; i < basis.size(); ++i) idx[basis[i]] = static_cast<int>(i);
  return idx;
}

// Dehomogenized column of m * g in the x-monomial basis of degree k.
// On chart 0 the surviving t-exponent is that of t1, on chart 1 that of t0.
void add_column(PolyMatrix& b, int col, const Polynomial& g, const Monomial& mult, int chart,
                const std::map<Monomial, int, MonomialOrder>& idx) {
  for (const auto& [mono, c] : g.terms()) {
    Monomial xpart;
    for (int i = 0; i < 5; ++i)
      xpart.e[kXBase + i] = static_cast<std::int16_t>(mono.x(i) + mult.x(i));
    int tdeg = chart == 0 ? mono.t(1) : mono.t(0);
    b.at(idx.at(xpart), col) =
        b.at(idx.at(xpart), col) + UniPoly::monomial(c, tdeg);
  }
}

long expected_rank(int k) { return k == 1 ? 5 : (2 * k - 1) * 4; }

SheafTorsion merge_charts(const TorsionReport& t0, const TorsionReport& t1, const FieldSpec& f) {
  SheafTorsion s;
  s.nontorsion = t0.nontorsion || t1.nontorsion;
  int len0_at_origin = 0, len1_at_origin = 0;
  for (const auto& [root, len] : t0.local_lengths) {
    if (root.is_zero()) len0_at_origin = len;
    s.support.push_back({BasePoint{Scalar::one(f), root}, len});
  }
  for (const auto& [root, len] : t1.local_lengths)
    if (root.is_zero()) {
      len1_at_origin = len;
      s.support.push_back({BasePoint::zero_one(f), len});
    }
  std::sort(s.support.begin(), s.support.end(),
            [](const LocalContribution& a, const LocalContribution& b) {
              return a.point < b.point;
            });
  s.total_length = t0.total_length + len1_at_origin;
  // The two charts overlap away from their origins; totals must agree there.
  s.charts_consistent =
      (t0.total_length + len1_at_origin == t1.total_length + len0_at_origin);
  for (const auto& [factor, deg] : t0.unresolved_factors)
    s.unresolved.push_back("chart t0=1: " + factor);
  for (const auto& [factor, deg] : t1.unresolved_factors)
    s.unresolved.push_back("chart t1=1: " + factor);
  return s;
}

}  // namespace

ChartSlice build_Rk_chart(const PfaffianModel& m, int k, int chart) {
  if (k < 1 || k > 3) throw error("build_Rk_chart supports k = 1,2,3");
  if (chart != 0 && chart != 1) throw error("chart must be 0 or 1");
  const FieldSpec& f = m.field();
  ChartSlice slice;
  slice.chart = chart;
  slice.k = k;
  slice.basis = x_monomial_basis(k);
  auto idx = index_of(slice.basis);

  std::vector<std::pair<Polynomial, int>> gens;
  for (const Polynomial& g : pfaffians(m).generators()) {
    if (g.is_zero()) throw error("degenerate model: zero Pfaffian generator");
    gens.push_back({g, x_degree_of(g)});
  }
  int cols = 0;
  for (const auto& [g, e] : gens)
    if (e <= k) cols += static_cast<int>(x_monomial_basis(k - e).size());
  slice.relations = PolyMatrix(static_cast<int>(slice.basis.size()), cols, f);
  int col = 0;
  for (const auto& [g, e] : gens) {
    if (e > k) continue;
    for (const Monomial& mult : x_monomial_basis(k - e)) add_column(slice.relations, col++, g, mult, chart, idx);
  }

  CokernelShape shape = cokernel_shape(slice.relations);
  slice.rank = shape.free_rank;
  if (slice.rank != expected_rank(k))
    throw error("R_" + std::to_string(k) + " chart rank " + std::to_string(slice.rank) +
                ", expected " + std::to_string(expected_rank(k)) + "; model rejected");
  if (shape.torsion_length != 0)
    throw error("R_" + std::to_string(k) + " chart has torsion of length " +
                std::to_string(shape.torsion_length) + "; model rejected");
  return slice;
}

ChartKernels build_K2_K3(const PfaffianModel& m, int chart) {
  const FieldSpec& f = m.field();
  ChartSlice r2 = build_Rk_chart(m, 2, chart);
  ChartSlice r3 = build_Rk_chart(m, 3, chart);

  ChartKernels out;
  out.chart = chart;
  // K_n = ker(Sym^n R_1 -> R_n) is exactly the degree-n piece of the ideal,
  // i.e. the column span of the relation matrix; reduce to a free basis.
  WeakPopov w2 = column_reduce(r2.relations);
  WeakPopov w3 = column_reduce(r3.relations);
  out.K2 = w2.basis;
  out.K3 = w3.basis;
  if (out.K2.cols() != 3 || out.K3.cols() != 15)
    throw error("kernel ranks (" + std::to_string(out.K2.cols()) + "," +
                std::to_string(out.K3.cols()) + "), expected (3,15)");

  auto idx3 = index_of(r3.basis);
  out.mu = PolyMatrix(15, 15, f);
  for (int a = 0; a < 3; ++a)
    for (int l = 0; l < 5; ++l) {
      std::vector<UniPoly> w(35, UniPoly::zero(f));
      for (int i = 0; i < 15; ++i) {
        if (r2.basis[i].xdeg() != 2) throw error("internal basis corruption");
        Monomial prod = r2.basis[i] * Monomial::x_power(l, 1);
        w[idx3.at(prod)] = w[idx3.at(prod)] + out.K2.at(i, a);
      }
      std::vector<UniPoly> coeffs = member_coefficients(w3, w);
      for (int i = 0; i < 15; ++i) out.mu.at(i, a * 5 + l) = coeffs[i];
    }
  return out;
}

HorikawaReport horikawa(const PfaffianModel& m) {
  const FieldSpec& f = m.field();
  TorsionReport t0 = cokernel_torsion(build_K2_K3(m, 0).mu);
  TorsionReport t1 = cokernel_torsion(build_K2_K3(m, 1).mu);
  HorikawaReport rep;
  rep.F = merge_charts(t0, t1, f);
  for (const LocalContribution& c : rep.F.support) {
    if (c.length % 2 != 0) rep.all_even = false;
    rep.H_values.push_back({c.point, c.length / 2});
  }
  if (rep.F.total_length % 2 != 0) rep.all_even = false;
  return rep;
}

namespace {

// Koszul data on one chart, at the level of R1 (x) Sym^2 R1 (75 columns):
// D sends x_i (x) m to the class of x_i * m in R_3 presented by B_3.
struct ChartKoszul {
  TorsionReport K03;
  TorsionReport K12;
};

ChartKoszul chart_koszul(const PfaffianModel& m, int chart) {
  const FieldSpec& f = m.field();
  ChartSlice r3 = build_Rk_chart(m, 3, chart);
  ChartKernels ker = build_K2_K3(m, chart);
  std::vector<Monomial> m2 = x_monomial_basis(2);
  std::vector<Monomial> m3 = r3.basis;
  auto idx3 = index_of(m3);
  const int n2 = 15, n3 = 35, cols = 75;

  // K_{0,3} = coker(D): presented by the multiplication columns together
  // with the R_3 relations.
  PolyMatrix d_and_rel(n3, cols + r3.relations.cols(), f);
  std::vector<int> target(cols);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < n2; ++j) {
      int t = idx3.at(m2[j] * Monomial::x_power(i, 1));
      target[i * n2 + j] = t;
      d_and_rel.at(t, i * n2 + j) = UniPoly::constant(Scalar::one(f));
    }
  for (int j = 0; j < r3.relations.cols(); ++j)
    for (int i = 0; i < n3; ++i) d_and_rel.at(i, cols + j) = r3.relations.at(i, j);
  ChartKoszul out;
  out.K03 = cokernel_torsion(d_and_rel);

  // ker(D) is spanned by ker(mult) (constant columns) and a lift of B_3.
  std::vector<int> first_slot(n3, -1);
  std::vector<std::vector<UniPoly>> span_cols;
  for (int c = 0; c < cols; ++c) {
    int t = target[c];
    if (first_slot[t] < 0) {
      first_slot[t] = c;
      continue;
    }
    std::vector<UniPoly> v(cols, UniPoly::zero(f));
    v[c] = UniPoly::constant(Scalar::one(f));
    v[first_slot[t]] = -UniPoly::constant(Scalar::one(f));
    span_cols.push_back(std::move(v));
  }
  for (int j = 0; j < r3.relations.cols(); ++j) {
    std::vector<UniPoly> v(cols, UniPoly::zero(f));
    for (int i = 0; i < n3; ++i) v[first_slot[i]] = r3.relations.at(i, j);
    span_cols.push_back(std::move(v));
  }
  PolyMatrix span(cols, static_cast<int>(span_cols.size()), f);
  for (std::size_t j = 0; j < span_cols.size(); ++j)
    for (int i = 0; i < cols; ++i) span.at(i, static_cast<int>(j)) = span_cols[j][i];
  WeakPopov kernel_basis = column_reduce(span);
  if (kernel_basis.rank != 55)
    throw error("ker(d_{1,2}) rank " + std::to_string(kernel_basis.rank) + ", expected 55");

  // K_{1,2} = ker(D) / (R1 (x) K2 + im(d_{2,1})) with
  // d_{2,1}(x_i ^ x_j (x) x_k) = x_i (x) x_j x_k - x_j (x) x_i x_k.
  std::vector<std::vector<UniPoly>> sub;
  auto idx2 = index_of(m2);
  for (int i = 0; i < 5; ++i)
    for (int a = 0; a < 3; ++a) {
      std::vector<UniPoly> v(cols, UniPoly::zero(f));
      for (int j = 0; j < n2; ++j) v[i * n2 + j] = ker.K2.at(j, a);
      sub.push_back(std::move(v));
    }
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j)
      for (int k = 0; k < 5; ++k) {
        std::vector<UniPoly> v(cols, UniPoly::zero(f));
        int jk = idx2.at(Monomial::x_power(j, 1) * Monomial::x_power(k, 1));
        int ik = idx2.at(Monomial::x_power(i, 1) * Monomial::x_power(k, 1));
        v[i * n2 + jk] = v[i * n2 + jk] + UniPoly::constant(Scalar::one(f));
        v[j * n2 + ik] = v[j * n2 + ik] - UniPoly::constant(Scalar::one(f));
        sub.push_back(std::move(v));
      }
  PolyMatrix presentation(55, static_cast<int>(sub.size()), f);
  for (std::size_t c = 0; c < sub.size(); ++c) {
    std::vector<UniPoly> coeffs = member_coefficients(kernel_basis, sub[c]);
    for (int i = 0; i < 55; ++i) presentation.at(i, static_cast<int>(c)) = coeffs[i];
  }
  out.K12 = cokernel_torsion(presentation);
  return out;
}

}  // namespace

KoszulReport koszul_sheaves(const PfaffianModel& m) {
  ChartKoszul c0 = chart_koszul(m, 0);
  ChartKoszul c1 = chart_koszul(m, 1);
  KoszulReport rep;
  SheafTorsion k03 = merge_charts(c0.K03, c1.K03, m.field());
  rep.K03_total_length = k03.total_length;
  rep.K03_zero = !k03.nontorsion && k03.total_length == 0;
  rep.K12 = merge_charts(c0.K12, c1.K12, m.field());
  return rep;
}

SlopeReport verify_slope(const PfaffianModel& m) {
  SlopeReport rep;
  rep.inv = invariants(m);
  rep.hor = horikawa(m);
  rep.koszul = koszul_sheaves(m);

  rep.evenness_holds = rep.hor.all_even && !rep.hor.F.nontorsion &&
                       rep.hor.F.charts_consistent && rep.hor.F.unresolved.empty();
  rep.H_total = rep.hor.F.total_length / 2;
  rep.slope_holds =
      rep.evenness_holds && (rep.inv.K2 == 4 * rep.inv.chi_f + rep.H_total);
  rep.konno_holds = rep.koszul.K03_zero && !rep.koszul.K12.nontorsion &&
                    rep.koszul.K12.charts_consistent &&
                    (2 * rep.inv.K2 == 8 * rep.inv.chi_f + rep.koszul.K12.total_length -
                                           rep.koszul.K03_total_length);
  rep.supports_match = rep.hor.F.support.size() == rep.koszul.K12.support.size();
  if (rep.supports_match)
    for (std::size_t i = 0; i < rep.hor.F.support.size(); ++i)
      if (!(rep.hor.F.support[i].point == rep.koszul.K12.support[i].point) ||
          rep.hor.F.support[i].length != rep.koszul.K12.support[i].length)
        rep.supports_match = false;
  rep.pass = rep.slope_holds && rep.konno_holds && rep.evenness_holds && rep.supports_match;
  return rep;
}

}  // namespace pfib
