#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pfib/poly.hpp"

namespace pfib {

// 5x5 skew polynomial matrix defining a genus-5 fibration. Only the upper
// triangle is stored, so skew-symmetry holds by construction.
struct PfaffianModel {
  AmbientWeights weights;
  // Order: (0,1) (0,2) (0,3) (0,4) (1,2) (1,3) (1,4) (2,3) (2,4) (3,4).
  std::array<Polynomial, 10> upper;
  std::string label;
  std::optional<std::uint64_t> seed;

  const FieldSpec& field() const { return upper[0].field(); }
  // Signed entry M[i][j]; M = -M^T with zero diagonal.
  Polynomial entry(int i, int j) const;
};

int upper_index(int i, int j);

// The five 4x4 sub-Pfaffians, in the layout of the displayed family-A
// equations: c1, c2 cubic-type and p1, p2, p3 quadric-type.
struct PfaffianSystem {
  Polynomial c1, c2, p1, p2, p3;

  std::vector<Polynomial> generators() const { return {c1, c2, p1, p2, p3}; }
  // Signed vector v with M v = 0 (the Buchsbaum-Eisenbud syzygy):
  // (c1, -c2, p1, -p2, p3).
  std::vector<Polynomial> signed_vector() const;
};

PfaffianSystem pfaffians(const PfaffianModel& m);

// M * signed Pfaffian vector; identically zero for every skew model.
std::vector<Polynomial> complex_composition(const PfaffianModel& m);

struct HomogeneityIssue {
  std::string name;    // entry "M[i][j]" or Pfaffian name
  std::string detail;  // distinct term bidegrees found
};

struct HomogeneityReport {
  bool consistent = true;
  // Bidegrees of c1, c2, p1, p2, p3 when consistent.
  std::vector<Bidegree> pfaffian_bidegrees;
  std::vector<HomogeneityIssue> issues;
};

// Checks every matrix entry and every Pfaffian for bihomogeneity under the
// model's ambient weights.
HomogeneityReport check_homogeneity(const PfaffianModel& m);

// Builders for the three explicit families. q-degree preconditions are
// enforced for A; B and C accept what they are given and leave the verdict
// to the homogeneity diagnostic.
PfaffianModel family_A(int n, const Polynomial& q1, const Polynomial& q2, const Polynomial& q3);
PfaffianModel family_B(int a, const Polynomial& q1, const Polynomial& q2, const Polynomial& q3);
PfaffianModel family_C(int d, const Polynomial& q1, const Polynomial& q2, const Polynomial& q3);

// q bidegrees as printed in the source construction vs the assignment the
// homogeneity checker certifies.
std::array<Bidegree, 3> family_B_stated_q_bidegrees(int a);
std::array<Bidegree, 3> family_B_consistent_q_bidegrees();
std::array<Bidegree, 3> family_C_stated_q_bidegrees();
AmbientWeights family_B_weights(int a);
AmbientWeights family_C_weights(int d);

// General local form over a chart k[t] (t = t0 here), with symbolic or
// concrete entries. l_i, m_i linear in x; q_i of x-degree 2.
PfaffianModel local_model(int n, const std::array<Polynomial, 3>& l,
                          const std::array<Polynomial, 3>& m,
                          const std::array<Polynomial, 3>& q);

// Deterministic small-integer random sections of a graded piece.
Polynomial random_section(std::uint64_t& state, const Bidegree& d, const AmbientWeights& w,
                          const FieldSpec& f);
std::array<Polynomial, 3> random_quadrics(std::uint64_t seed, const FieldSpec& f);
std::array<Polynomial, 3> random_sections_for(std::uint64_t seed,
                                              const std::array<Bidegree, 3>& degs,
                                              const AmbientWeights& w, const FieldSpec& f);

// Key-value model file format; round-trips bit-exactly.
std::string write_model(const PfaffianModel& m);
PfaffianModel read_model(const std::string& text, const FieldSpec& f);

}  // namespace pfib
