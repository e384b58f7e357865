#include <doctest.h>

#include "pfib/fiber.hpp"
#include "pfib/parse.hpp"
#include "test_util.hpp"

using namespace pfib;

namespace {
const FieldSpec QQ = FieldSpec::rationals();
const FieldSpec FP = FieldSpec::prime(kDefaultPrime);
}  // namespace

TEST_CASE("base points") {
  BasePoint p = BasePoint::of(Scalar::of_int(2, QQ), Scalar::of_int(6, QQ));
  CHECK(p == BasePoint{Scalar::one(QQ), Scalar::of_int(3, QQ)});
  CHECK(BasePoint::of(Scalar::zero(QQ), Scalar::of_int(-7, QQ)) == BasePoint::zero_one(QQ));
  CHECK_THROWS_AS(BasePoint::of(Scalar::zero(QQ), Scalar::zero(QQ)), error);
  CHECK(BasePoint::one_zero(QQ).str() == "(1:0)");

  auto pts = random_base_points(9, 50, FP);
  CHECK(pts.size() == 50);
  for (const auto& q : pts) CHECK(!q.t1.is_zero());  // sampler avoids the special fiber
}

TEST_CASE("specialize") {
  auto qs = random_quadrics(17, FP);
  PfaffianModel m = family_A(1, qs[0], qs[1], qs[2]);

  // at (1:0) the two cubics and the three scroll minors survive
  FiberIdeal f10 = specialize(m, BasePoint::one_zero(FP));
  CHECK(f10.gens.size() == 5);
  std::multiset<int> degs;
  for (const auto& g : f10.gens) {
    int d = -1;
    for (const auto& [mono, c] : g.terms()) d = mono.xdeg();
    degs.insert(d);
  }
  CHECK(degs == std::multiset<int>{2, 2, 2, 3, 3});
  // the three quadrics are exactly the minors of the (x0 x2 x3 / x1 x3 x4) matrix
  for (const char* minor : {"x2*x4 - x3^2", "x0*x4 - x1*x3", "x0*x3 - x1*x2"}) {
    Polynomial target = parse_polynomial(minor, FP);
    target = target.scaled(target.terms().begin()->second.inv());
    bool found = false;
    for (const auto& g : f10.gens) found = found || g == target;
    CHECK(found);
  }

  // at (0:1) the q_i themselves appear and c1 drops out
  FiberIdeal f01 = specialize(m, BasePoint::zero_one(FP));
  CHECK(f01.gens.size() == 4);
  for (const auto& q : qs) {
    Polynomial norm = q.scaled(q.terms().begin()->second.inv());
    bool found = false;
    for (const auto& g : f01.gens) found = found || g == norm;
    CHECK(found);
  }

  // leading coefficients are normalized
  for (const auto& g : f10.gens) CHECK(g.terms().begin()->second.is_one());

  PfaffianModel zero;
  for (auto& e : zero.upper) e = Polynomial::zero(FP);
  CHECK_THROWS_AS(specialize(zero, BasePoint::one_zero(FP)), error);
}

TEST_CASE("graded ideal dimensions") {
  auto qs = random_quadrics(17, FP);
  PfaffianModel m = family_A(1, qs[0], qs[1], qs[2]);

  FiberIdeal generic = specialize(m, BasePoint::of(Scalar::one(FP), Scalar::of_int(5, FP)));
  CHECK(graded_ideal_dim(generic, 2) == 3);
  CHECK(graded_ideal_dim(generic, 3) == 15);

  FiberIdeal trig = specialize(m, BasePoint::one_zero(FP));
  CHECK(graded_ideal_dim(trig, 2) == 3);
  CHECK(graded_ideal_dim(trig, 3) == 15);

  CHECK(graded_ideal_dim(generic, 1) == 0);
  CHECK_THROWS_AS(graded_ideal_dim(generic, 5), error);
}

TEST_CASE("coker mu and classification") {
  auto qs = random_quadrics(17, FP);
  for (int n : {1, 2}) {
    PfaffianModel m = family_A(n, qs[0], qs[1], qs[2]);
    FiberClassification at10 = classify(m, BasePoint::one_zero(FP));
    CHECK(at10.quadric_dim == 3);
    CHECK(at10.cubic_dim == 15);
    CHECK(at10.coker_dim == 2);
    CHECK(at10.verdict == FiberVerdict::trigonal);

    FiberClassification at01 = classify(m, BasePoint::zero_one(FP));
    CHECK(at01.verdict == FiberVerdict::nontrigonal);
  }

  // 50 seeded random fibers are all nontrigonal
  PfaffianModel m = family_A(1, qs[0], qs[1], qs[2]);
  auto results = scan(m, random_base_points(123, 50, FP));
  CHECK(results.size() == 50);
  for (const auto& r : results) {
    CHECK(r.verdict == FiberVerdict::nontrigonal);
    CHECK(r.coker_dim == 0);
  }
}

TEST_CASE("artificial anomalous ideal") {
  FiberIdeal f;
  f.point = BasePoint::one_zero(QQ);
  for (const char* s : {"x0^2", "x0*x1", "x1^2"}) f.gens.push_back(parse_polynomial(s, QQ));
  CHECK(graded_ideal_dim(f, 2) == 3);
  CHECK(graded_ideal_dim(f, 3) == 13);  // monomials divisible by two of x0,x1
}

TEST_CASE("classification invariances") {
  auto qs = random_quadrics(29, FP);
  PfaffianModel m = family_A(1, qs[0], qs[1], qs[2]);

  // point rescaling
  FiberClassification a = classify(m, BasePoint::of(Scalar::of_int(3, FP), Scalar::zero(FP)));
  CHECK(a.point == BasePoint::one_zero(FP));
  CHECK(a.verdict == FiberVerdict::trigonal);

  // invertible linear change of the x coordinates preserves all dimensions
  std::vector<std::vector<Scalar>> change(5, std::vector<Scalar>(5, Scalar::zero(FP)));
  long long mat[5][5] = {{1, 1, 0, 0, 0},
                         {0, 1, 0, 0, 2},
                         {0, 0, 1, 0, 0},
                         {1, 0, 0, 1, 0},
                         {0, 0, 0, 0, 1}};
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) change[i][j] = Scalar::of_int(mat[i][j], FP);
  PfaffianModel moved = m;
  for (auto& e : moved.upper) e = e.substitute_linear_x(change);
  for (const BasePoint& p : {BasePoint::one_zero(FP),
                             BasePoint::of(Scalar::one(FP), Scalar::of_int(7, FP))}) {
    FiberClassification before = classify(m, p);
    FiberClassification after = classify(moved, p);
    CHECK(before.quadric_dim == after.quadric_dim);
    CHECK(before.cubic_dim == after.cubic_dim);
    CHECK(before.coker_dim == after.coker_dim);
    CHECK(before.verdict == after.verdict);
  }

  // scan sorts and dedupes
  auto results = scan(m, {BasePoint::one_zero(FP), BasePoint::one_zero(FP),
                          BasePoint::zero_one(FP)});
  CHECK(results.size() == 2);
}

TEST_CASE("smoothness probe") {
  auto qs = random_quadrics(31, FP);
  PfaffianModel m = family_A(1, qs[0], qs[1], qs[2]);

  SmoothnessReport ok =
      smoothness_probe(m, BasePoint::of(Scalar::one(FP), Scalar::one(FP)), 1 << 20, 23);
  CHECK(ok.status == SmoothnessReport::Status::pass);
  CHECK(ok.points_checked > 0);

  // visibly singular model: the fiber at (1:1) contains the line
  // x1 = x3 = x4 = 0, and the surface jacobian drops to rank 2 on it
  Polynomial sq = parse_polynomial("x0*x1", FP);
  PfaffianModel bad = family_A(1, sq, sq, sq);
  SmoothnessReport fail =
      smoothness_probe(bad, BasePoint::of(Scalar::one(FP), Scalar::one(FP)), 1 << 20, 23);
  CHECK(fail.status == SmoothnessReport::Status::fail);
  CHECK(!fail.witness.empty());

  SmoothnessReport none = smoothness_probe(m, BasePoint::one_zero(FP), 0, 23);
  CHECK(none.status == SmoothnessReport::Status::inconclusive);
  CHECK(none.points_checked == 0);
}
