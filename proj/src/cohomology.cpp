#include "pfib/cohomology.hpp"

#include <string>

#include "pfib/linalg.hpp"

namespace pfib {

namespace {

long h_p1(int i, long d) {
  if (i == 0) return d >= 0 ? d + 1 : 0;
  if (i == 1) return d <= -2 ? -d - 1 : 0;
  return 0;
}

// All exponent vectors alpha >= 0 with |alpha| = d over the 5 fiber
// coordinates; visit receives the twisted t-degree shift sum a_i alpha_i.
template <typename F>
void for_each_composition(int d, const AmbientWeights& w, F&& visit) {
  std::array<int, 5> alpha{};
  auto rec = [&](auto&& self, int pos, int left) -> void {
    if (pos == 4) {
      alpha[4] = left;
      long shift = 0;
      for (int i = 0; i < 5; ++i) shift += static_cast<long>(w.a[i]) * alpha[i];
      visit(shift);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      alpha[pos] = v;
      self(self, pos + 1, left - v);
    }
  };
  if (d >= 0) rec(rec, 0, d);
}

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

long scroll_h(int i, const Bidegree& d, const AmbientWeights& w) {
  if (i < 0 || i > 5) return 0;
  if (d.dx >= 0) {
    if (i > 1) return 0;
    long total = 0;
    for_each_composition(static_cast<int>(d.dx), w,
                         [&](long shift) { total += h_p1(i, d.dt + shift); });
    return total;
  }
  if (d.dx > -5) return 0;
  // Serre duality on the 5-fold: omega = O(sum a_i - 2, -5).
  Bidegree dual{w.sum() - 2 - d.dt, -5 - d.dx};
  return scroll_h(5 - i, dual, w);
}

long scroll_chi(const Bidegree& d, const AmbientWeights& w) {
  long chi = 0;
  for (int i = 0; i <= 5; ++i) chi += (i % 2 == 0 ? 1 : -1) * scroll_h(i, d, w);
  return chi;
}

FreeComplex resolution_from_model(const PfaffianModel& m) {
  HomogeneityReport h = check_homogeneity(m);
  if (!h.consistent) {
    std::string msg = "resolution requires a bihomogeneous model;";
    for (const auto& issue : h.issues) msg += " " + issue.name + ": " + issue.detail + ";";
    throw error(msg);
  }
  FreeComplex c;
  c.weights = m.weights;
  c.generator_degrees = h.pfaffian_bidegrees;
  Bidegree sum{0, 0};
  for (const Bidegree& f : c.generator_degrees) sum = sum + f;
  if (sum.dt % 2 != 0 || sum.dx % 2 != 0)
    throw error("generator degree sum " + sum.str() + " is odd; no symmetric resolution");
  c.s = {sum.dt / 2, sum.dx / 2};
  c.levels[0] = {Bidegree{0, 0}};
  for (const Bidegree& f : c.generator_degrees) c.levels[1].push_back(-f);
  for (const Bidegree& f : c.generator_degrees) c.levels[2].push_back(f - c.s);
  c.levels[3] = {-c.s};
  return c;
}

Bidegree dualizing_twist(const FreeComplex& c) {
  return c.s + Bidegree{c.weights.sum() - 2, -5};
}

Bidegree relative_dualizing_twist(const FreeComplex& c) {
  return dualizing_twist(c) + Bidegree{2, 0};
}

long complex_chi(const FreeComplex& c, const Bidegree& d) {
  long chi = 0;
  for (int level = 0; level < 4; ++level) {
    long sign = (level % 2 == 0) ? 1 : -1;
    for (const Bidegree& twist : c.levels[level]) chi += sign * scroll_chi(twist + d, c.weights);
  }
  return chi;
}

std::array<long, 3> surface_cohomology(const FreeComplex& c, const Bidegree& d) {
  // E1 grid: grid[p][q] = h^q of the twisted level-p term.
  long grid[4][6];
  for (int p = 0; p < 4; ++p)
    for (int q = 0; q <= 5; ++q) {
      long h = 0;
      for (const Bidegree& twist : c.levels[p]) h += scroll_h(q, twist + d, c.weights);
      grid[p][q] = h;
    }
  // Degeneration certificate: every potential differential
  // d_r: (p,q) -> (p-r, q-r+1) must have a zero source or target.
  for (int p = 0; p < 4; ++p)
    for (int q = 0; q <= 5; ++q) {
      if (grid[p][q] == 0) continue;
      for (int r = 1; r <= 3; ++r) {
        int tp = p - r, tq = q - r + 1;
        if (tp >= 0 && tq >= 0 && tq <= 5 && grid[tp][tq] != 0)
          throw error("hypercohomology spectral sequence does not visibly degenerate at twist " +
                      d.str());
      }
    }
  std::array<long, 3> out{0, 0, 0};
  for (int p = 0; p < 4; ++p)
    for (int q = 0; q <= 5; ++q) {
      int k = q - p;
      if (grid[p][q] == 0) continue;
      if (k < 0 || k > 2)
        throw error("unexpected hypercohomology in degree " + std::to_string(k) + " at twist " +
                    d.str());
      out[k] += grid[p][q];
    }
  return out;
}

long chi_Rk(const FreeComplex& c, int k) {
  if (k < 2) throw error("chi_Rk needs k >= 2");
  return complex_chi(c, relative_dualizing_twist(c) * k);
}

FibrationInvariants invariants(const PfaffianModel& m) {
  FreeComplex c = resolution_from_model(m);
  std::array<long, 3> h = surface_cohomology(c, Bidegree{0, 0});
  if (h[0] != 1) throw error("h^0(O_S) = " + std::to_string(h[0]) + ", expected 1");
  FibrationInvariants inv;
  inv.q = h[1];
  inv.p_g = h[2];
  inv.chi_O = 1 - inv.q + inv.p_g;
  if (inv.chi_O != complex_chi(c, Bidegree{0, 0}))
    throw error("chi(O_S) mismatch between hypercohomology and Euler characteristic");
  inv.chi_f = inv.chi_O + 4;  // chi_f = chi(O_S) - chi(O_B) chi(O_F), genus 5 over P^1
  // chi(R_k) = chi_f + C(k,2) K2 + 4(2k-1); solve at k=2,3, cross-check k=4.
  auto solve = [&](int k) -> long {
    long num = chi_Rk(c, k) - inv.chi_f - 4 * (2 * k - 1);
    long binom = static_cast<long>(k) * (k - 1) / 2;
    if (num % binom != 0) throw error("chi(R_" + std::to_string(k) + ") incompatible with K2");
    return num / binom;
  };
  inv.K2 = solve(2);
  if (solve(3) != inv.K2 || solve(4) != inv.K2)
    throw error("K2 inconsistent across k = 2,3,4; resolution rejected");
  inv.e_f = 12 * inv.chi_f - inv.K2;
  return inv;
}

RkProfile expected_rank_chi_deg(int k, const FibrationInvariants& inv) {
  if (k < 0) throw error("expected_rank_chi_deg needs k >= 0");
  RkProfile p;
  if (k == 0) {
    p.rank = 1;
    p.deg = 0;
  } else {
    p.rank = k == 1 ? 5 : (2 * k - 1) * 4;
    p.deg = inv.chi_f + static_cast<long>(k) * (k - 1) / 2 * inv.K2;
  }
  // Riemann-Roch on P^1 for a bundle of the given rank and degree.
  p.chi = p.deg + p.rank;
  return p;
}

bool fiberwise_exactness_probe(const PfaffianModel& m, std::uint64_t seed, int samples) {
  const FieldSpec& f = m.field();
  PfaffianSystem sys = pfaffians(m);
  std::vector<Polynomial> v = sys.signed_vector();
  std::uint64_t state = seed;
  int checked = 0;
  int budget = samples * 20;
  while (checked < samples && budget-- > 0) {
    std::array<Scalar, 2> tau;
    std::array<Scalar, 5> xi;
    for (auto& t : tau) t = Scalar::of_int(static_cast<long long>(splitmix64(state) % 10007), f);
    for (auto& x : xi) x = Scalar::of_int(static_cast<long long>(splitmix64(state) % 10007), f);
    // d1 = row of signed Pfaffians, d2 = M, d3 = column of signed Pfaffians
    FieldMatrix d1(1, 5, f), d2(5, 5, f), d3(5, 1, f);
    bool on_surface = true;
    for (int j = 0; j < 5; ++j) {
      Scalar val = v[j].evaluate_tx(tau, xi);
      d1.at(0, j) = val;
      d3.at(j, 0) = val;
      if (!val.is_zero()) on_surface = false;
    }
    if (on_surface) continue;  // probe wants generic points off S
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) d2.at(i, j) = m.entry(i, j).evaluate_tx(tau, xi);
    // compositions vanish identically; exactness off S needs ranks 1, 4, 1
    FieldMatrix c12 = d1 * d2;
    for (int j = 0; j < 5; ++j)
      if (!c12.at(0, j).is_zero()) return false;
    FieldMatrix c23 = d2 * d3;
    for (int i = 0; i < 5; ++i)
      if (!c23.at(i, 0).is_zero()) return false;
    if (d1.rank() != 1 || d2.rank() != 4 || d3.rank() != 1) return false;
    ++checked;
  }
  return checked == samples;
}

}  // namespace pfib
