#pragma once

#include <string>
#include <vector>

#include "pfib/cohomology.hpp"
#include "pfib/fiber.hpp"
#include "pfib/linalg.hpp"
#include "pfib/pfaffian.hpp"

namespace pfib {

// Everything on the base is handled on the two affine charts of P^1:
// chart 0 sets t0 = 1 (coordinate t = t1), chart 1 sets t1 = 1 (t = t0).
// The special fiber (1:0) of the families lives at t = 0 on chart 0.

// Degree-k slice of k[t][x]/I as a k[t]-module presentation: free module on
// the degree-k x-monomials modulo the columns of the relation matrix B.
struct ChartSlice {
  int chart = 0;
  int k = 0;
  std::vector<Monomial> basis;  // ambient x-monomials of degree k
  PolyMatrix relations;         // B_k: |basis| rows
  long rank = 0;                // |basis| - rank(B_k)

  ChartSlice() : relations(0, 0, FieldSpec::rationals()) {}
};

ChartSlice build_Rk_chart(const PfaffianModel& m, int k, int chart);

// Kernels K_2 = ker(Sym^2 R_1 -> R_2) and K_3 = ker(Sym^3 R_1 -> R_3) as
// free column bases over k[t] (ranks 3 and 15), plus the multiplication
// matrix mu: K_2 (x) R_1 -> K_3 in those bases.
struct ChartKernels {
  int chart = 0;
  PolyMatrix K2;  // 15 x 3
  PolyMatrix K3;  // 35 x 15
  PolyMatrix mu;  // 15 x 15

  ChartKernels()
      : K2(0, 0, FieldSpec::rationals()),
        K3(0, 0, FieldSpec::rationals()),
        mu(0, 0, FieldSpec::rationals()) {}
};

ChartKernels build_K2_K3(const PfaffianModel& m, int chart);

struct LocalContribution {
  BasePoint point;
  int length = 0;
};

// Torsion data of a sheaf on P^1 assembled from the two chart reports.
struct SheafTorsion {
  std::vector<LocalContribution> support;  // sorted by point
  int total_length = 0;
  bool nontorsion = false;
  bool charts_consistent = true;
  std::vector<std::string> unresolved;  // factors without rational roots
};

struct HorikawaReport {
  SheafTorsion F;  // the sheaf coker(mu)
  bool all_even = true;
  // Horikawa number at each support point: half the local length.
  std::vector<std::pair<BasePoint, int>> H_values;
};

HorikawaReport horikawa(const PfaffianModel& m);

struct KoszulReport {
  bool K03_zero = true;
  int K03_total_length = 0;
  SheafTorsion K12;
};

KoszulReport koszul_sheaves(const PfaffianModel& m);

struct SlopeReport {
  FibrationInvariants inv;
  HorikawaReport hor;
  KoszulReport koszul;
  long H_total = 0;            // sum of Horikawa numbers
  bool slope_holds = false;    // K2 == 4 chi_f + H_total
  bool konno_holds = false;    // K2 == 4 chi_f + (len K12 - len K03)/2
  bool evenness_holds = false;
  bool supports_match = false;  // K12 and F agree pointwise
  bool pass = false;
};

SlopeReport verify_slope(const PfaffianModel& m);

}  // namespace pfib
