#include <doctest.h>

#include "pfib/linalg.hpp"
#include "test_util.hpp"

using namespace pfib;

namespace {
const FieldSpec QQ = FieldSpec::rationals();
const FieldSpec FP = FieldSpec::prime(kDefaultPrime);
const FieldSpec FP2 = FieldSpec::prime(kSecondPrime);

UniPoly up(std::initializer_list<long long> cs, const FieldSpec& f) {
  std::vector<Scalar> v;
  for (long long c : cs) v.push_back(Scalar::of_int(c, f));
  return UniPoly::from_coeffs(v, f);
}

PolyMatrix random_poly_matrix(std::uint64_t& state, int rows, int cols, const FieldSpec& f,
                              int max_deg = 2) {
  PolyMatrix m(rows, cols, f);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m.at(i, j) = testutil::random_unipoly(state, f, max_deg);
  return m;
}

// gcd of all k x k minors; independent oracle for invariant factor products
// d1 * ... * dk on small matrices.
UniPoly minor_gcd(const PolyMatrix& m, int k) {
  std::vector<std::vector<int>> row_sets, col_sets;
  std::vector<int> pick;
  auto gen = [&](auto&& self, int n, int from, std::vector<std::vector<int>>& out) -> void {
    if (static_cast<int>(pick.size()) == k) {
      out.push_back(pick);
      return;
    }
    for (int i = from; i < n; ++i) {
      pick.push_back(i);
      self(self, n, i + 1, out);
      pick.pop_back();
    }
  };
  gen(gen, m.rows(), 0, row_sets);
  gen(gen, m.cols(), 0, col_sets);
  UniPoly g = UniPoly::zero(m.field());
  for (const auto& rs : row_sets)
    for (const auto& cs : col_sets) {
      PolyMatrix sub(k, k, m.field());
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) sub.at(i, j) = m.at(rs[i], cs[j]);
      g = gcd(g, poly_determinant(sub));
    }
  return g.is_zero() ? g : g.monic();
}
}  // namespace

TEST_CASE("unipoly division and gcd") {
  UniPoly a = up({-1, 0, 1}, QQ);  // t^2 - 1
  UniPoly b = up({-1, 1}, QQ);     // t - 1
  CHECK(a.divided_by(b) == up({1, 1}, QQ));
  CHECK_THROWS_AS(up({1, 0, 1}, QQ).divided_by(b), error);

  auto dm = up({1, 2, 0, 1}, QQ).divmod(up({1, 1}, QQ));
  CHECK(dm.quot * up({1, 1}, QQ) + dm.rem == up({1, 2, 0, 1}, QQ));
  CHECK(dm.rem.degree() < 1);

  CHECK(gcd(up({-1, 0, 1}, QQ), up({1, 1}, QQ)).monic() == up({1, 1}, QQ));
  CHECK(gcd(up({-1, 0, 1}, QQ), up({-2, 1}, QQ)).is_unit());

  // (t-2)^3 (t+1)
  UniPoly f = up({-2, 1}, QQ) * up({-2, 1}, QQ) * up({-2, 1}, QQ) * up({1, 1}, QQ);
  CHECK(f.root_multiplicity(Scalar::of_int(2, QQ)) == 3);
  CHECK(f.root_multiplicity(Scalar::of_int(-1, QQ)) == 1);
  CHECK(f.root_multiplicity(Scalar::of_int(5, QQ)) == 0);
  CHECK(f.eval(Scalar::of_int(3, QQ)) == Scalar::of_int(4, QQ));
}

TEST_CASE("field matrix rank and kernel") {
  for (const FieldSpec& f : {QQ, FP}) {
    FieldMatrix m(3, 4, f);
    // rows: (1,2,3,4), (2,4,6,8), (0,0,1,1) -> rank 2
    long long rows[3][4] = {{1, 2, 3, 4}, {2, 4, 6, 8}, {0, 0, 1, 1}};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 4; ++j) m.at(i, j) = Scalar::of_int(rows[i][j], f);
    CHECK(m.rank() == 2);
    auto ker = m.kernel_basis();
    CHECK(ker.size() == 2);
    for (const auto& v : ker)
      for (int i = 0; i < 3; ++i) {
        Scalar s = Scalar::zero(f);
        for (int j = 0; j < 4; ++j) s += m.at(i, j) * v[j];
        CHECK(s.is_zero());
      }
  }
}

TEST_CASE("rank agrees across fields for integer matrices") {
  std::uint64_t state = 17;
  for (int trial = 0; trial < 20; ++trial) {
    int r = 2 + static_cast<int>(testutil::splitmix64(state) % 4);
    int c = 2 + static_cast<int>(testutil::splitmix64(state) % 4);
    std::vector<std::vector<long long>> entries(r, std::vector<long long>(c));
    for (auto& row : entries)
      for (auto& e : row) e = testutil::small_int(state, 6);
    auto build = [&](const FieldSpec& f) {
      FieldMatrix m(r, c, f);
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m.at(i, j) = Scalar::of_int(entries[i][j], f);
      return m;
    };
    int rq = build(QQ).rank();
    CHECK(rq == build(FP).rank());
    CHECK(rq == build(FP2).rank());
  }
}

TEST_CASE("smith normal form examples") {
  // diag(t, t^2) is already in normal form
  PolyMatrix d(2, 2, QQ);
  d.at(0, 0) = up({0, 1}, QQ);
  d.at(1, 1) = up({0, 0, 1}, QQ);
  SmithResult s = smith_normal_form(d);
  CHECK(s.rank == 2);
  CHECK(s.invariant_factors[0] == up({0, 1}, QQ));
  CHECK(s.invariant_factors[1] == up({0, 0, 1}, QQ));

  // [[t, 1], [0, t]] has unit content: factors (1, t^2)
  PolyMatrix m(2, 2, QQ);
  m.at(0, 0) = up({0, 1}, QQ);
  m.at(0, 1) = up({1}, QQ);
  m.at(1, 1) = up({0, 1}, QQ);
  s = smith_normal_form(m);
  CHECK(s.rank == 2);
  CHECK(s.invariant_factors[0].is_unit());
  CHECK(s.invariant_factors[1] == up({0, 0, 1}, QQ));
  // minor-gcd oracle: d1 = gcd of entries, d1 d2 = det
  CHECK(minor_gcd(m, 1) == s.invariant_factors[0].monic());
  CHECK(minor_gcd(m, 2) == (s.invariant_factors[0] * s.invariant_factors[1]).monic());
}

TEST_CASE("smith normal form properties") {
  std::uint64_t state = 23;
  for (int trial = 0; trial < 30; ++trial) {
    const FieldSpec& f = (trial % 2 == 0) ? QQ : FP;
    int r = 1 + static_cast<int>(testutil::splitmix64(state) % 4);
    int c = 1 + static_cast<int>(testutil::splitmix64(state) % 4);
    PolyMatrix m = random_poly_matrix(state, r, c, f);
    SmithResult s = smith_normal_form(m);

    // reconstruction: U M V = D
    CHECK((s.U * m * s.V - s.diagonal(r, c)).is_zero());
    // unimodularity: constant nonzero determinants
    CHECK(poly_determinant(s.U).is_unit());
    CHECK(poly_determinant(s.V).is_unit());
    // divisibility chain, monic factors
    for (int i = 0; i + 1 < static_cast<int>(s.invariant_factors.size()); ++i) {
      const UniPoly& a = s.invariant_factors[i];
      const UniPoly& b = s.invariant_factors[i + 1];
      if (a.is_zero()) {
        CHECK(b.is_zero());
      } else {
        if (!a.is_zero()) CHECK(a.leading().is_one());
        if (!b.is_zero()) CHECK_NOTHROW(b.divided_by(a));
      }
    }
    // rank matches evaluation at a generic point
    CHECK(s.rank == m.eval(Scalar::of_int(1234577, f)).rank());
    // minor-gcd oracle on the products d1...dk (small sizes only)
    if (r <= 3 && c <= 3) {
      UniPoly prod = UniPoly::constant(Scalar::one(f));
      for (int k = 1; k <= s.rank; ++k) {
        prod = prod * s.invariant_factors[k - 1];
        CHECK(minor_gcd(m, k) == prod.monic());
      }
      if (s.rank < std::min(r, c)) CHECK(minor_gcd(m, s.rank + 1).is_zero());
    }
  }
}

TEST_CASE("poly kernel basis") {
  // rows of [[t, -1, 0], [0, t, -1]]: kernel spanned by (1, t, t^2)
  PolyMatrix m(2, 3, QQ);
  m.at(0, 0) = up({0, 1}, QQ);
  m.at(0, 1) = up({-1}, QQ);
  m.at(1, 1) = up({0, 1}, QQ);
  m.at(1, 2) = up({-1}, QQ);
  auto ker = poly_kernel_basis(m);
  REQUIRE(ker.size() == 1);
  // proportional to (1, t, t^2) with unit leading entry
  UniPoly g0 = ker[0][0];
  CHECK(g0.is_unit());
  CHECK(ker[0][1] == up({0, 1}, QQ) * g0);
  CHECK(ker[0][2] == up({0, 0, 1}, QQ) * g0);

  std::uint64_t state = 31;
  for (int trial = 0; trial < 15; ++trial) {
    const FieldSpec& f = (trial % 2 == 0) ? QQ : FP;
    PolyMatrix r = random_poly_matrix(state, 3, 5, f, 1);
    auto kb = poly_kernel_basis(r);
    SmithResult s = smith_normal_form(r);
    CHECK(static_cast<int>(kb.size()) == 5 - s.rank);
    for (const auto& v : kb)
      for (int i = 0; i < 3; ++i) {
        UniPoly acc = UniPoly::zero(f);
        for (int j = 0; j < 5; ++j) acc = acc + r.at(i, j) * v[j];
        CHECK(acc.is_zero());
      }
  }
}

TEST_CASE("solve_exact") {
  // B = [[1],[t]], v = (q, t q) solvable with c = (q); v = (0,1) is not
  PolyMatrix b(2, 1, QQ);
  b.at(0, 0) = up({1}, QQ);
  b.at(1, 0) = up({0, 1}, QQ);
  SmithResult s = smith_normal_form(b);
  UniPoly q = up({3, -1, 2}, QQ);
  auto c = solve_exact(s, b, {q, up({0, 1}, QQ) * q});
  REQUIRE(c.size() == 1);
  CHECK(c[0] == q);
  CHECK_THROWS_AS(solve_exact(s, b, {UniPoly::zero(QQ), UniPoly::constant(Scalar::one(QQ))}),
                  error);

  // random consistent systems: B (3x2 generic), v = B w
  std::uint64_t state = 41;
  for (int trial = 0; trial < 15; ++trial) {
    const FieldSpec& f = (trial % 2 == 0) ? QQ : FP;
    PolyMatrix bb = random_poly_matrix(state, 3, 2, f, 1);
    SmithResult sb = smith_normal_form(bb);
    if (sb.rank < 2) continue;
    std::vector<UniPoly> w = {testutil::random_unipoly(state, f), testutil::random_unipoly(state, f)};
    std::vector<UniPoly> v(3, UniPoly::zero(f));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 2; ++j) v[i] = v[i] + bb.at(i, j) * w[j];
    auto sol = solve_exact(sb, bb, v);
    for (int i = 0; i < 3; ++i) {
      UniPoly acc = UniPoly::zero(f);
      for (int j = 0; j < 2; ++j) acc = acc + bb.at(i, j) * sol[j];
      CHECK(acc == v[i]);
    }
  }
}

TEST_CASE("cokernel torsion") {
  // coker diag(t, t^2(t-1)) : length 3 at t=0, length 1 at t=1
  PolyMatrix d(2, 2, QQ);
  d.at(0, 0) = up({0, 1}, QQ);
  d.at(1, 1) = up({0, 0, -1, 1}, QQ);  // t^2 (t - 1)
  TorsionReport r = cokernel_torsion(d);
  CHECK(!r.nontorsion);
  CHECK(r.total_length == 4);
  REQUIRE(r.local_lengths.size() == 2);
  CHECK(r.local_lengths[0].first == Scalar::zero(QQ));
  CHECK(r.local_lengths[0].second == 3);
  CHECK(r.local_lengths[1].first == Scalar::one(QQ));
  CHECK(r.local_lengths[1].second == 1);
  CHECK(r.unresolved_factors.empty());

  // rank deficit -> free part flagged
  PolyMatrix m(2, 1, QQ);
  m.at(0, 0) = up({0, 1}, QQ);
  CHECK(cokernel_torsion(m).nontorsion);

  // irreducible quadratic factor lands in unresolved but counts toward total
  PolyMatrix irr(1, 1, QQ);
  irr.at(0, 0) = up({1, 0, 1}, QQ);  // t^2 + 1
  TorsionReport ri = cokernel_torsion(irr);
  CHECK(!ri.nontorsion);
  CHECK(ri.total_length == 2);
  CHECK(ri.local_lengths.empty());
  REQUIRE(ri.unresolved_factors.size() == 1);
  CHECK(ri.unresolved_factors[0].second == 2);

  // torsion is invariant under unimodular row/column operations
  std::uint64_t state = 53;
  for (int trial = 0; trial < 10; ++trial) {
    PolyMatrix base(3, 3, FP);
    base.at(0, 0) = up({0, 1}, FP);
    base.at(1, 1) = up({0, -1, 1}, FP) * up({0, 1}, FP);
    base.at(2, 2) = up({0, -1, 1}, FP);
    PolyMatrix u = PolyMatrix::identity(3, FP);
    PolyMatrix v = PolyMatrix::identity(3, FP);
    // random elementary operations keep U, V unimodular
    for (int k = 0; k < 4; ++k) {
      int i = static_cast<int>(testutil::splitmix64(state) % 3);
      int j = static_cast<int>(testutil::splitmix64(state) % 3);
      if (i == j) continue;
      UniPoly c = testutil::random_unipoly(state, FP, 1);
      for (int col = 0; col < 3; ++col) u.at(i, col) = u.at(i, col) + c * u.at(j, col);
      for (int row = 0; row < 3; ++row) v.at(row, i) = v.at(row, i) + c * v.at(row, j);
    }
    TorsionReport a = cokernel_torsion(base);
    TorsionReport b = cokernel_torsion(u * base * v);
    CHECK(a.total_length == b.total_length);
    REQUIRE(a.local_lengths.size() == b.local_lengths.size());
    for (std::size_t k = 0; k < a.local_lengths.size(); ++k) {
      CHECK(a.local_lengths[k].first == b.local_lengths[k].first);
      CHECK(a.local_lengths[k].second == b.local_lengths[k].second);
    }
  }
}

TEST_CASE("poly determinant") {
  PolyMatrix m(2, 2, QQ);
  m.at(0, 0) = up({0, 1}, QQ);
  m.at(0, 1) = up({1}, QQ);
  m.at(1, 0) = up({-1}, QQ);
  m.at(1, 1) = up({0, 1}, QQ);
  CHECK(poly_determinant(m) == up({1, 0, 1}, QQ));

  // det(AB) = det(A) det(B)
  std::uint64_t state = 61;
  for (int trial = 0; trial < 10; ++trial) {
    PolyMatrix a = random_poly_matrix(state, 3, 3, FP, 1);
    PolyMatrix b = random_poly_matrix(state, 3, 3, FP, 1);
    CHECK(poly_determinant(a * b) == poly_determinant(a) * poly_determinant(b));
  }
}

TEST_CASE("weak Popov column reduction") {
  // kernel-shaped example: span of (1,t,0) and (0,1,t)
  PolyMatrix m(3, 2, QQ);
  m.at(0, 0) = up({1}, QQ);
  m.at(1, 0) = up({0, 1}, QQ);
  m.at(1, 1) = up({1}, QQ);
  m.at(2, 1) = up({0, 1}, QQ);
  WeakPopov w = column_reduce(m);
  CHECK(w.rank == 2);
  REQUIRE(w.pivot_row.size() == 2);
  CHECK(w.pivot_row[0] < w.pivot_row[1]);  // sorted, distinct pivot rows

  std::uint64_t state = 91;
  for (int trial = 0; trial < 20; ++trial) {
    // rational trials use degree 1: the Smith oracle swells over Q otherwise
    bool rational = trial % 4 == 0;
    const FieldSpec& f = rational ? QQ : FP;
    PolyMatrix r = random_poly_matrix(state, 3, 5, f, rational ? 1 : 2);
    WeakPopov red = column_reduce(r);
    // pivot rows distinct
    for (int i = 0; i + 1 < red.rank; ++i) CHECK(red.pivot_row[i] < red.pivot_row[i + 1]);
    // rank agrees with a generic evaluation bound and entry degrees never grew
    CHECK(red.rank == smith_normal_form(r).rank);
    int in_deg = -1, out_deg = -1;
    for (int i = 0; i < r.rows(); ++i)
      for (int j = 0; j < r.cols(); ++j) in_deg = std::max(in_deg, r.at(i, j).degree());
    for (int i = 0; i < red.basis.rows(); ++i)
      for (int j = 0; j < red.basis.cols(); ++j)
        out_deg = std::max(out_deg, red.basis.at(i, j).degree());
    CHECK(out_deg <= in_deg);
    // span preserved: every original column reduces to zero against the basis
    for (int j = 0; j < r.cols(); ++j) {
      std::vector<UniPoly> v;
      for (int i = 0; i < r.rows(); ++i) v.push_back(r.at(i, j));
      std::vector<UniPoly> c = member_coefficients(red, v);
      // recombine and compare
      for (int i = 0; i < r.rows(); ++i) {
        UniPoly acc = UniPoly::zero(f);
        for (int k = 0; k < red.rank; ++k) acc = acc + red.basis.at(i, k) * c[k];
        CHECK(acc == r.at(i, j));
      }
    }
  }
}

TEST_CASE("member_coefficients rejects outsiders") {
  PolyMatrix m(2, 1, QQ);
  m.at(0, 0) = up({0, 1}, QQ);  // span of (t, 0)
  WeakPopov w = column_reduce(m);
  std::vector<UniPoly> inside{up({0, 0, 3}, QQ), UniPoly::zero(QQ)};
  CHECK(member_coefficients(w, inside)[0] == up({0, 3}, QQ));
  std::vector<UniPoly> off_position{UniPoly::zero(QQ), up({0, 1}, QQ)};
  CHECK_THROWS_AS(member_coefficients(w, off_position), error);
  std::vector<UniPoly> off_degree{up({1}, QQ), UniPoly::zero(QQ)};  // 1 not in (t)
  CHECK_THROWS_AS(member_coefficients(w, off_degree), error);
}

TEST_CASE("cokernel shape") {
  // diag(t, 1) in 3 rows: coker = k[t] (+) k[t]/(t)
  PolyMatrix m(3, 2, QQ);
  m.at(0, 0) = up({0, 1}, QQ);
  m.at(1, 1) = up({1}, QQ);
  CokernelShape s = cokernel_shape(m);
  CHECK(s.free_rank == 1);
  CHECK(s.torsion_length == 1);

  std::uint64_t state = 101;
  for (int trial = 0; trial < 15; ++trial) {
    PolyMatrix r = random_poly_matrix(state, 3, 4, FP, 2);
    SmithResult snf = smith_normal_form(r);
    int torsion = 0;
    for (const auto& d : snf.invariant_factors)
      if (!d.is_zero()) torsion += d.degree();
    CokernelShape sh = cokernel_shape(r);
    CHECK(sh.free_rank == 3 - snf.rank);
    CHECK(sh.torsion_length == torsion);
  }
}

TEST_CASE("bareiss determinant") {
  std::uint64_t state = 111;
  for (int trial = 0; trial < 15; ++trial) {
    const FieldSpec& f = trial % 2 ? FP : QQ;
    PolyMatrix a = random_poly_matrix(state, 4, 4, f, 2);
    CHECK(bareiss_determinant(a) == poly_determinant(a));
  }
  CHECK(bareiss_determinant(PolyMatrix(3, 3, QQ)).is_zero());
  CHECK_THROWS_AS(bareiss_determinant(PolyMatrix(2, 3, QQ)), error);
}
