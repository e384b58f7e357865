#pragma once

#include <utility>
#include <vector>

#include "pfib/unipoly.hpp"

namespace pfib {

// Dense exact matrix over the coefficient field.
class FieldMatrix {
 public:
  FieldMatrix(int rows, int cols, const FieldSpec& f);
  static FieldMatrix identity(int n, const FieldSpec& f);
  static FieldMatrix from_rows(const std::vector<std::vector<Scalar>>& rows, const FieldSpec& f);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const FieldSpec& field() const { return field_; }
  Scalar& at(int i, int j) { return data_[i * cols_ + j]; }
  const Scalar& at(int i, int j) const { return data_[i * cols_ + j]; }

  FieldMatrix operator*(const FieldMatrix& o) const;

  int rank() const;
  FieldMatrix rref() const;
  // Columns of the result span the kernel; verified by multiplication.
  std::vector<std::vector<Scalar>> kernel_basis() const;

 private:
  int rows_, cols_;
  FieldSpec field_;
  std::vector<Scalar> data_;
};

// Matrix over k[t].
class PolyMatrix {
 public:
  PolyMatrix(int rows, int cols, const FieldSpec& f);
  static PolyMatrix identity(int n, const FieldSpec& f);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const FieldSpec& field() const { return field_; }
  UniPoly& at(int i, int j) { return data_[i * cols_ + j]; }
  const UniPoly& at(int i, int j) const { return data_[i * cols_ + j]; }

  PolyMatrix operator*(const PolyMatrix& o) const;
  PolyMatrix operator-(const PolyMatrix& o) const;
  bool is_zero() const;
  FieldMatrix eval(const Scalar& at) const;
  PolyMatrix transpose() const;

 private:
  int rows_, cols_;
  FieldSpec field_;
  std::vector<UniPoly> data_;
};

// U * M * V = diag(d1..dr, 0...), each d_i monic, d1 | d2 | ... ; U, V
// unimodular over k[t].
struct SmithResult {
  PolyMatrix U;
  PolyMatrix V;
  std::vector<UniPoly> invariant_factors;  // length min(rows, cols), zeros kept
  int rank = 0;                            // nonzero invariant factors

  PolyMatrix diagonal(int rows, int cols) const;
};

SmithResult smith_normal_form(const PolyMatrix& m);

// Free basis of ker(M) as columns (each a vector of length cols).
std::vector<std::vector<UniPoly>> poly_kernel_basis(const PolyMatrix& m);

// Solve B c = v for B with full column rank and v in the column span;
// throws if v is not in the span over k[t].
std::vector<UniPoly> solve_exact(const SmithResult& snf_of_b, const PolyMatrix& b,
                                 const std::vector<UniPoly>& v);

// Unimodular column reduction to weak Popov form: the nonzero columns have
// pairwise distinct pivot rows (pivot = bottom-most entry of top degree) and
// are kept in pivot-row order. They form a free basis of the column span and
// a Groebner basis of that module for the degree-then-position order; entry
// degrees never exceed those of the input, unlike Euclidean elimination.
struct WeakPopov {
  PolyMatrix basis;            // nonzero reduced columns
  std::vector<int> pivot_row;  // per basis column, strictly increasing
  std::vector<int> pivot_deg;
  int rank = 0;                // = basis.cols()

  WeakPopov() : basis(0, 0, FieldSpec::rationals()) {}
};

WeakPopov column_reduce(const PolyMatrix& m);

// Coefficients c with basis * c = v, by division against the Groebner
// basis; throws if v is not in the column span.
std::vector<UniPoly> member_coefficients(const WeakPopov& w, std::vector<UniPoly> v);

// coker(M) = k[t]^free_rank (+) torsion module of the given total length.
struct CokernelShape {
  int free_rank = 0;
  int torsion_length = 0;
};

CokernelShape cokernel_shape(const PolyMatrix& m);

// Fraction-free (Bareiss) determinant; intermediates stay minors of M, so
// degrees grow linearly. Suitable for the sizes the pipeline produces.
UniPoly bareiss_determinant(const PolyMatrix& m);

// Torsion data of coker(M) = k[t]^rows / colspan(M).
struct TorsionReport {
  bool nontorsion = false;  // colspan rank < rows: cokernel has free part
  // (root, local length) with local length = sum of multiplicities of
  // (t - root) over the invariant factors.
  std::vector<std::pair<Scalar, int>> local_lengths;
  // Nonlinear factors that resisted the root search, with their total
  // degree contribution. Still counted in total_length.
  std::vector<std::pair<std::string, int>> unresolved_factors;
  int total_length = 0;  // sum of degrees of the invariant factors
};

TorsionReport cokernel_torsion(const PolyMatrix& m);

// Cofactor determinant for small matrices (property tests only).
UniPoly poly_determinant(const PolyMatrix& m);

}  // namespace pfib
