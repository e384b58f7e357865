#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pfib/pfaffian.hpp"

namespace pfib {

// A point (t0 : t1) on the base, normalized to (1 : c) or (0 : 1).
struct BasePoint {
  Scalar t0, t1;

  static BasePoint of(const Scalar& a, const Scalar& b);
  static BasePoint one_zero(const FieldSpec& f);  // (1 : 0), t = t1 vanishing
  static BasePoint zero_one(const FieldSpec& f);  // (0 : 1)
  bool operator==(const BasePoint& o) const { return t0 == o.t0 && t1 == o.t1; }
  bool operator<(const BasePoint& o) const;  // deterministic report order
  std::string str() const;
};

// The canonical ideal of one fiber: specialized Pfaffian generators in x.
struct FiberIdeal {
  BasePoint point;
  std::vector<Polynomial> gens;  // x-homogeneous, leading coefficient 1
};

FiberIdeal specialize(const PfaffianModel& m, const BasePoint& p);

// Dimension of the degree-d graded piece of the ideal spanned by the fiber
// generators inside k[x0..x4]; d <= 4.
long graded_ideal_dim(const FiberIdeal& f, int d);

// dim coker of H^0(I(2)) (x) H^0(O(1)) -> H^0(I(3)).
long coker_mu_dim(const FiberIdeal& f);

enum class FiberVerdict { nontrigonal, trigonal, anomalous };
std::string verdict_name(FiberVerdict v);

struct FiberClassification {
  BasePoint point;
  long quadric_dim = 0;
  long cubic_dim = 0;
  long coker_dim = 0;
  FiberVerdict verdict = FiberVerdict::anomalous;
};

FiberClassification classify(const PfaffianModel& m, const BasePoint& p);
std::vector<FiberClassification> scan(const PfaffianModel& m, std::vector<BasePoint> points);

// Deterministic sample of base points for scanning, avoiding duplicates.
std::vector<BasePoint> random_base_points(std::uint64_t seed, int count, const FieldSpec& f);

// Probabilistic smoothness check of the surface along one fiber. Fiber points
// are found by brute enumeration over a small auxiliary prime field (the
// model's coefficients are lifted symmetrically); each found point must have
// ambient Jacobian rank exactly 3.
struct SmoothnessReport {
  enum class Status { pass, fail, inconclusive };
  Status status = Status::inconclusive;
  int points_checked = 0;
  std::string witness;  // offending point when status == fail
};

SmoothnessReport smoothness_probe(const PfaffianModel& m, const BasePoint& p, long trials,
                                  std::uint64_t small_prime = 41);

}  // namespace pfib
