#include <doctest.h>

#include "pfib/horikawa.hpp"
#include "pfib/parse.hpp"
#include "test_util.hpp"

using namespace pfib;

namespace {
const FieldSpec QQ = FieldSpec::rationals();
const FieldSpec FP = FieldSpec::prime(kDefaultPrime);

PfaffianModel model_A(int n, std::uint64_t seed, const FieldSpec& f) {
  auto qs = random_quadrics(seed, f);
  return family_A(n, qs[0], qs[1], qs[2]);
}
}  // namespace

TEST_CASE("chart slices of R_k") {
  PfaffianModel m = model_A(1, 17, FP);
  for (int chart : {0, 1}) {
    ChartSlice r1 = build_Rk_chart(m, 1, chart);
    CHECK(r1.rank == 5);
    CHECK(r1.relations.cols() == 0);  // no generators below degree 2
    ChartSlice r2 = build_Rk_chart(m, 2, chart);
    CHECK(r2.basis.size() == 15);
    CHECK(r2.relations.cols() == 3);
    CHECK(r2.rank == 12);
    ChartSlice r3 = build_Rk_chart(m, 3, chart);
    CHECK(r3.basis.size() == 35);
    CHECK(r3.relations.cols() == 17);  // 2 cubics + 5 multiples of each quadric
    CHECK(r3.rank == 20);
  }
  CHECK_THROWS_AS(build_Rk_chart(m, 4, 0), error);
  CHECK_THROWS_AS(build_Rk_chart(m, 2, 2), error);

  // a collapsed skew matrix has zero Pfaffians and is rejected
  PfaffianModel bad;
  for (auto& p : bad.upper) p = Polynomial::zero(FP);
  bad.upper[upper_index(0, 1)] = Polynomial::variable(kTBase, FP);
  CHECK_THROWS_AS(build_Rk_chart(bad, 2, 0), error);
}

TEST_CASE("kernel bases are free of the right rank") {
  PfaffianModel m = model_A(2, 23, FP);
  for (int chart : {0, 1}) {
    ChartKernels k = build_K2_K3(m, chart);
    CHECK(k.K2.rows() == 15);
    CHECK(k.K2.cols() == 3);
    CHECK(k.K3.rows() == 35);
    CHECK(k.K3.cols() == 15);
    // a free basis keeps full rank at every specialization
    for (long long c : {0, 1, 5, -3}) {
      Scalar s = Scalar::of_int(c, FP);
      CHECK(k.K2.eval(s).rank() == 3);
      CHECK(k.K3.eval(s).rank() == 15);
    }
  }
}

TEST_CASE("mu specializes to the fiberwise multiplication map") {
  PfaffianModel m = model_A(1, 31, FP);
  ChartKernels k = build_K2_K3(m, 0);
  // coker dim of mu at t = c must match the fiber classification at (1:c)
  for (long long c : {0, 5, 12}) {
    Scalar s = Scalar::of_int(c, FP);
    long coker = 15 - k.mu.eval(s).rank();
    FiberClassification fc = classify(m, BasePoint{Scalar::one(FP), s});
    CHECK(coker == fc.coker_dim);
  }
  CHECK(15 - k.mu.eval(Scalar::zero(FP)).rank() == 2);  // the trigonal fiber
}

TEST_CASE("Horikawa sheaf of family A") {
  for (int n : {1, 2, 3}) {
    PfaffianModel m = model_A(n, 41 + n, FP);
    HorikawaReport rep = horikawa(m);
    REQUIRE(rep.F.support.size() == 1);
    CHECK(rep.F.support[0].point == BasePoint::one_zero(FP));
    CHECK(rep.F.support[0].length == 2 * n);
    CHECK(rep.F.total_length == 2 * n);
    CHECK(rep.F.charts_consistent);
    CHECK(rep.F.unresolved.empty());
    CHECK(!rep.F.nontorsion);
    CHECK(rep.all_even);
    REQUIRE(rep.H_values.size() == 1);
    CHECK(rep.H_values[0].second == n);
  }
}

TEST_CASE("Horikawa sheaf over the rationals") {
  PfaffianModel m = model_A(1, 7, QQ);
  HorikawaReport rep = horikawa(m);
  REQUIRE(rep.F.support.size() == 1);
  CHECK(rep.F.support[0].point == BasePoint::one_zero(QQ));
  CHECK(rep.F.total_length == 2);
  CHECK(rep.all_even);
}

TEST_CASE("scaling the quadrics does not move the torsion") {
  auto qs = random_quadrics(59, FP);
  PfaffianModel m1 = family_A(2, qs[0], qs[1], qs[2]);
  PfaffianModel m2 = family_A(2, qs[0].scaled(Scalar::of_int(7, FP)),
                              qs[1].scaled(Scalar::of_int(-3, FP)),
                              qs[2].scaled(Scalar::of_int(11, FP)));
  HorikawaReport a = horikawa(m1), b = horikawa(m2);
  CHECK(a.F.total_length == b.F.total_length);
  REQUIRE(a.F.support.size() == b.F.support.size());
  for (std::size_t i = 0; i < a.F.support.size(); ++i) {
    CHECK(a.F.support[i].point == b.F.support[i].point);
    CHECK(a.F.support[i].length == b.F.support[i].length);
  }
}

TEST_CASE("Koszul sheaves of family A") {
  for (int n : {1, 2}) {
    PfaffianModel m = model_A(n, 61 + n, FP);
    KoszulReport rep = koszul_sheaves(m);
    CHECK(rep.K03_zero);
    CHECK(rep.K03_total_length == 0);
    REQUIRE(rep.K12.support.size() == 1);
    CHECK(rep.K12.support[0].point == BasePoint::one_zero(FP));
    CHECK(rep.K12.support[0].length == 2 * n);
    CHECK(rep.K12.total_length == 2 * n);
    CHECK(rep.K12.charts_consistent);
  }
}

TEST_CASE("slope equality for family A") {
  for (int n : {1, 2}) {
    PfaffianModel m = model_A(n, 71 + n, FP);
    SlopeReport rep = verify_slope(m);
    CHECK(rep.inv.K2 == 41 * n);
    CHECK(rep.inv.chi_f == 10 * n);
    CHECK(rep.H_total == n);
    CHECK(rep.slope_holds);   // 41n = 4 * 10n + n
    CHECK(rep.konno_holds);   // same equality through the Koszul sheaves
    CHECK(rep.evenness_holds);
    CHECK(rep.supports_match);
    CHECK(rep.pass);
  }
}

TEST_CASE("slope reports are deterministic") {
  PfaffianModel m = model_A(1, 83, FP);
  SlopeReport a = verify_slope(m), b = verify_slope(m);
  CHECK(a.pass == b.pass);
  CHECK(a.H_total == b.H_total);
  CHECK(a.hor.F.total_length == b.hor.F.total_length);
  CHECK(a.koszul.K12.total_length == b.koszul.K12.total_length);
}

TEST_CASE("slope equality for families B and C") {
  // family B needs the consistent (0,2) quadric assignment to be homogeneous
  auto bq = random_sections_for(7, family_B_consistent_q_bidegrees(), family_B_weights(1), FP);
  SlopeReport b = verify_slope(family_B(1, bq[0], bq[1], bq[2]));
  CHECK(b.inv.p_g == 17);
  CHECK(b.inv.chi_f == 22);
  CHECK(b.inv.K2 == 89);
  CHECK(b.H_total == 1);  // K2 = 4 chi_f + 1
  REQUIRE(b.hor.F.support.size() == 1);
  CHECK(b.hor.F.support[0].point == BasePoint::one_zero(FP));
  CHECK(b.hor.F.support[0].length == 2);
  CHECK(b.pass);

  auto cq = random_sections_for(9, family_C_stated_q_bidegrees(), family_C_weights(1), FP);
  SlopeReport c = verify_slope(family_C(1, cq[0], cq[1], cq[2]));
  CHECK(c.inv.p_g == 16);
  CHECK(c.inv.chi_f == 21);
  CHECK(c.inv.K2 == 86);
  CHECK(c.H_total == 2);  // K2 = 4 chi_f + 2
  REQUIRE(c.hor.F.support.size() == 1);
  CHECK(c.hor.F.support[0].length == 4);
  CHECK(c.pass);
}
