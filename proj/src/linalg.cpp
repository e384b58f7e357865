#include "pfib/linalg.hpp"

#include <algorithm>
#include <tuple>

namespace pfib {

FieldMatrix::FieldMatrix(int rows, int cols, const FieldSpec& f)
    : rows_(rows), cols_(cols), field_(f), data_(rows * cols, Scalar::zero(f)) {}

FieldMatrix FieldMatrix::identity(int n, const FieldSpec& f) {
  FieldMatrix m(n, n, f);
  for (int i = 0; i < n; ++i) m.at(i, i) = Scalar::one(f);
  return m;
}

FieldMatrix FieldMatrix::from_rows(const std::vector<std::vector<Scalar>>& rows,
                                   const FieldSpec& f) {
  int r = static_cast<int>(rows.size());
  int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
  FieldMatrix m(r, c, f);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[i].size()) != c) throw error("ragged matrix");
    for (int j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

FieldMatrix FieldMatrix::operator*(const FieldMatrix& o) const {
  if (cols_ != o.rows_) throw error("matrix shape mismatch");
  FieldMatrix r(rows_, o.cols_, field_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      if (at(i, k).is_zero()) continue;
      for (int j = 0; j < o.cols_; ++j) r.at(i, j) += at(i, k) * o.at(k, j);
    }
  return r;
}

FieldMatrix FieldMatrix::rref() const {
  FieldMatrix m = *this;
  int lead = 0;
  for (int r = 0; r < rows_ && lead < cols_; ++r) {
    int pivot = -1;
    while (lead < cols_) {
      for (int i = r; i < rows_; ++i)
        if (!m.at(i, lead).is_zero()) {
          pivot = i;
          break;
        }
      if (pivot >= 0) break;
      ++lead;
    }
    if (pivot < 0) break;
    if (pivot != r)
      for (int j = 0; j < cols_; ++j) std::swap(m.at(pivot, j), m.at(r, j));
    Scalar inv = m.at(r, lead).inv();
    for (int j = 0; j < cols_; ++j) m.at(r, j) *= inv;
    for (int i = 0; i < rows_; ++i) {
      if (i == r || m.at(i, lead).is_zero()) continue;
      Scalar factor = m.at(i, lead);
      for (int j = 0; j < cols_; ++j) m.at(i, j) -= factor * m.at(r, j);
    }
    ++lead;
  }
  return m;
}

int FieldMatrix::rank() const {
  FieldMatrix m = rref();
  int r = 0;
  for (int i = 0; i < rows_; ++i) {
    bool nonzero = false;
    for (int j = 0; j < cols_; ++j)
      if (!m.at(i, j).is_zero()) {
        nonzero = true;
        break;
      }
    if (nonzero) ++r;
  }
  return r;
}

std::vector<std::vector<Scalar>> FieldMatrix::kernel_basis() const {
  FieldMatrix m = rref();
  std::vector<int> pivot_col_of_row(rows_, -1);
  std::vector<bool> is_pivot(cols_, false);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (!m.at(i, j).is_zero()) {
        pivot_col_of_row[i] = j;
        is_pivot[j] = true;
        break;
      }
  std::vector<std::vector<Scalar>> basis;
  for (int j = 0; j < cols_; ++j) {
    if (is_pivot[j]) continue;
    std::vector<Scalar> v(cols_, Scalar::zero(field_));
    v[j] = Scalar::one(field_);
    for (int i = 0; i < rows_; ++i) {
      int pc = pivot_col_of_row[i];
      if (pc >= 0) v[pc] = -m.at(i, j);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

PolyMatrix::PolyMatrix(int rows, int cols, const FieldSpec& f)
    : rows_(rows), cols_(cols), field_(f), data_(rows * cols, UniPoly::zero(f)) {}

PolyMatrix PolyMatrix::identity(int n, const FieldSpec& f) {
  PolyMatrix m(n, n, f);
  for (int i = 0; i < n; ++i) m.at(i, i) = UniPoly::constant(Scalar::one(f));
  return m;
}

PolyMatrix PolyMatrix::operator*(const PolyMatrix& o) const {
  if (cols_ != o.rows_) throw error("matrix shape mismatch");
  PolyMatrix r(rows_, o.cols_, field_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      if (at(i, k).is_zero()) continue;
      for (int j = 0; j < o.cols_; ++j)
        r.at(i, j) = r.at(i, j) + at(i, k) * o.at(k, j);
    }
  return r;
}

PolyMatrix PolyMatrix::operator-(const PolyMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw error("matrix shape mismatch");
  PolyMatrix r(rows_, cols_, field_);
  for (int i = 0; i < rows_ * cols_; ++i) r.data_[i] = data_[i] - o.data_[i];
  return r;
}

bool PolyMatrix::is_zero() const {
  for (const auto& p : data_)
    if (!p.is_zero()) return false;
  return true;
}

FieldMatrix PolyMatrix::eval(const Scalar& at_value) const {
  FieldMatrix m(rows_, cols_, field_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m.at(i, j) = at(i, j).eval(at_value);
  return m;
}

PolyMatrix PolyMatrix::transpose() const {
  PolyMatrix m(cols_, rows_, field_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
  return m;
}

namespace {

struct SnfWork {
  PolyMatrix a;
  PolyMatrix u;
  PolyMatrix v;

  void swap_rows(int i, int k) {
    if (i == k) return;
    for (int j = 0; j < a.cols(); ++j) std::swap(a.at(i, j), a.at(k, j));
    for (int j = 0; j < u.cols(); ++j) std::swap(u.at(i, j), u.at(k, j));
  }
  void swap_cols(int j, int k) {
    if (j == k) return;
    for (int i = 0; i < a.rows(); ++i) std::swap(a.at(i, j), a.at(i, k));
    for (int i = 0; i < v.rows(); ++i) std::swap(v.at(i, j), v.at(i, k));
  }
  // row_i -= q * row_k
  void row_sub(int i, int k, const UniPoly& q) {
    if (q.is_zero()) return;
    for (int j = 0; j < a.cols(); ++j) a.at(i, j) = a.at(i, j) - q * a.at(k, j);
    for (int j = 0; j < u.cols(); ++j) u.at(i, j) = u.at(i, j) - q * u.at(k, j);
  }
  // col_j -= q * col_k
  void col_sub(int j, int k, const UniPoly& q) {
    if (q.is_zero()) return;
    for (int i = 0; i < a.rows(); ++i) a.at(i, j) = a.at(i, j) - q * a.at(i, k);
    for (int i = 0; i < v.rows(); ++i) v.at(i, j) = v.at(i, j) - q * v.at(i, k);
  }
  void row_add(int i, int k) {
    for (int j = 0; j < a.cols(); ++j) a.at(i, j) = a.at(i, j) + a.at(k, j);
    for (int j = 0; j < u.cols(); ++j) u.at(i, j) = u.at(i, j) + u.at(k, j);
  }
  void scale_row(int i, const Scalar& c) {
    for (int j = 0; j < a.cols(); ++j) a.at(i, j) = a.at(i, j).scaled(c);
    for (int j = 0; j < u.cols(); ++j) u.at(i, j) = u.at(i, j).scaled(c);
  }
};

}  // namespace

SmithResult smith_normal_form(const PolyMatrix& m) {
  const FieldSpec f = m.field();
  SnfWork w{m, PolyMatrix::identity(m.rows(), f), PolyMatrix::identity(m.cols(), f)};
  int n = std::min(m.rows(), m.cols());
  int k = 0;
  for (; k < n; ++k) {
    // Locate a minimal-degree nonzero pivot in the trailing block.
    int pi = -1, pj = -1, pd = -1;
    for (int i = k; i < m.rows(); ++i)
      for (int j = k; j < m.cols(); ++j) {
        const UniPoly& e = w.a.at(i, j);
        if (e.is_zero()) continue;
        if (pd < 0 || e.degree() < pd) {
          pi = i;
          pj = j;
          pd = e.degree();
        }
      }
    if (pd < 0) break;
    w.swap_rows(k, pi);
    w.swap_cols(k, pj);

    bool settled = false;
    while (!settled) {
      settled = true;
      for (int i = k + 1; i < m.rows(); ++i) {
        if (w.a.at(i, k).is_zero()) continue;
        UniPoly q = w.a.at(i, k).divmod(w.a.at(k, k)).quot;
        w.row_sub(i, k, q);
        if (!w.a.at(i, k).is_zero()) {
          w.swap_rows(i, k);  // strictly smaller degree pivot
          settled = false;
        }
      }
      for (int j = k + 1; j < m.cols(); ++j) {
        if (w.a.at(k, j).is_zero()) continue;
        UniPoly q = w.a.at(k, j).divmod(w.a.at(k, k)).quot;
        w.col_sub(j, k, q);
        if (!w.a.at(k, j).is_zero()) {
          w.swap_cols(j, k);
          settled = false;
        }
      }
      if (!settled) continue;
      // Enforce divisibility of the remaining block by the pivot.
      for (int i = k + 1; i < m.rows() && settled; ++i)
        for (int j = k + 1; j < m.cols() && settled; ++j) {
          if (w.a.at(i, j).is_zero()) continue;
          if (!w.a.at(i, j).divmod(w.a.at(k, k)).rem.is_zero()) {
            w.row_add(k, i);
            settled = false;
          }
        }
    }
    if (!w.a.at(k, k).leading().is_one())
      w.scale_row(k, w.a.at(k, k).leading().inv());
  }

  SmithResult res{std::move(w.u), std::move(w.v), {}, k};
  for (int i = 0; i < n; ++i) res.invariant_factors.push_back(w.a.at(i, i));
  return res;
}

PolyMatrix SmithResult::diagonal(int rows, int cols) const {
  const FieldSpec f = U.field();
  PolyMatrix d(rows, cols, f);
  for (std::size_t i = 0; i < invariant_factors.size(); ++i)
    d.at(static_cast<int>(i), static_cast<int>(i)) = invariant_factors[i];
  return d;
}

std::vector<std::vector<UniPoly>> poly_kernel_basis(const PolyMatrix& m) {
  SmithResult s = smith_normal_form(m);
  std::vector<std::vector<UniPoly>> basis;
  for (int j = s.rank; j < m.cols(); ++j) {
    std::vector<UniPoly> v;
    for (int i = 0; i < m.cols(); ++i) v.push_back(s.V.at(i, j));
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<UniPoly> solve_exact(const SmithResult& s, const PolyMatrix& b,
                                 const std::vector<UniPoly>& v) {
  const FieldSpec f = b.field();
  if (s.rank != b.cols()) throw error("solve_exact needs full column rank");
  // y = D^{-1} (U v), then c = V y.
  std::vector<UniPoly> uv(b.rows(), UniPoly::zero(f));
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.rows(); ++j)
      if (!s.U.at(i, j).is_zero() && !v[j].is_zero()) uv[i] = uv[i] + s.U.at(i, j) * v[j];
  std::vector<UniPoly> y(b.cols(), UniPoly::zero(f));
  for (int i = 0; i < b.cols(); ++i) y[i] = uv[i].divided_by(s.invariant_factors[i]);
  for (int i = b.cols(); i < b.rows(); ++i)
    if (!uv[i].is_zero()) throw error("vector not in column span");
  std::vector<UniPoly> c(b.cols(), UniPoly::zero(f));
  for (int i = 0; i < b.cols(); ++i)
    for (int j = 0; j < b.cols(); ++j)
      if (!s.V.at(i, j).is_zero() && !y[j].is_zero()) c[i] = c[i] + s.V.at(i, j) * y[j];
  return c;
}

namespace {

// (pivot row, degree) of column j; row -1 for a zero column.
std::pair<int, int> column_pivot(const PolyMatrix& a, int j) {
  int deg = -1, row = -1;
  for (int i = 0; i < a.rows(); ++i) {
    int d = a.at(i, j).degree();
    if (d < 0) continue;
    if (d >= deg) {
      deg = d;
      row = i;
    }
  }
  return {row, deg};
}

}  // namespace

WeakPopov column_reduce(const PolyMatrix& m) {
  const FieldSpec f = m.field();
  PolyMatrix a = m;
  int rows = a.rows(), cols = a.cols();
  std::vector<int> prow(cols), pdeg(cols);
  for (int j = 0; j < cols; ++j) std::tie(prow[j], pdeg[j]) = column_pivot(a, j);

  while (true) {
    // Find two nonzero columns sharing a pivot row.
    std::vector<int> owner(rows, -1);
    int ci = -1, cj = -1;
    for (int j = 0; j < cols && ci < 0; ++j) {
      if (prow[j] < 0) continue;
      int& o = owner[prow[j]];
      if (o < 0) {
        o = j;
        continue;
      }
      ci = j;
      cj = o;
    }
    if (ci < 0) break;
    if (pdeg[ci] < pdeg[cj]) std::swap(ci, cj);
    // The transvection cancels the top coefficient; column degree never grows.
    Scalar ratio = a.at(prow[ci], ci).leading() / a.at(prow[cj], cj).leading();
    UniPoly q = UniPoly::monomial(ratio, pdeg[ci] - pdeg[cj]);
    for (int i = 0; i < rows; ++i) a.at(i, ci) = a.at(i, ci) - q * a.at(i, cj);
    std::tie(prow[ci], pdeg[ci]) = column_pivot(a, ci);
  }

  std::vector<int> order;
  for (int j = 0; j < cols; ++j)
    if (prow[j] >= 0) order.push_back(j);
  std::sort(order.begin(), order.end(), [&](int x, int y) { return prow[x] < prow[y]; });
  WeakPopov w;
  w.rank = static_cast<int>(order.size());
  w.basis = PolyMatrix(rows, w.rank, f);
  for (int j = 0; j < w.rank; ++j) {
    for (int i = 0; i < rows; ++i) w.basis.at(i, j) = a.at(i, order[j]);
    w.pivot_row.push_back(prow[order[j]]);
    w.pivot_deg.push_back(pdeg[order[j]]);
  }
  return w;
}

std::vector<UniPoly> member_coefficients(const WeakPopov& w, std::vector<UniPoly> v) {
  const FieldSpec f = w.basis.field();
  if (static_cast<int>(v.size()) != w.basis.rows()) throw error("member vector length mismatch");
  std::vector<int> col_of_row(w.basis.rows(), -1);
  for (int j = 0; j < w.rank; ++j) col_of_row[w.pivot_row[j]] = j;
  std::vector<UniPoly> coeffs(w.rank, UniPoly::zero(f));
  while (true) {
    int deg = -1, row = -1;
    for (int i = 0; i < static_cast<int>(v.size()); ++i) {
      int d = v[i].degree();
      if (d < 0) continue;
      if (d >= deg) {
        deg = d;
        row = i;
      }
    }
    if (row < 0) return coeffs;  // fully reduced to zero
    int j = col_of_row[row];
    if (j < 0 || w.pivot_deg[j] > deg) throw error("vector not in column span");
    UniPoly q = UniPoly::monomial(v[row].leading() / w.basis.at(row, j).leading(),
                                  deg - w.pivot_deg[j]);
    for (int i = 0; i < static_cast<int>(v.size()); ++i)
      v[i] = v[i] - q * w.basis.at(i, j);
    coeffs[j] = coeffs[j] + q;
  }
}

CokernelShape cokernel_shape(const PolyMatrix& m) {
  // Row reduction splits off the free part of the cokernel; column reduction
  // of the remaining full-row-rank block exposes the torsion length as the
  // sum of the pivot degrees (= deg det of the square basis).
  WeakPopov rowred = column_reduce(m.transpose());
  CokernelShape s;
  s.free_rank = m.rows() - rowred.rank;
  WeakPopov colred = column_reduce(rowred.basis.transpose());
  for (int d : colred.pivot_deg) s.torsion_length += d;
  return s;
}

UniPoly bareiss_determinant(const PolyMatrix& m) {
  if (m.rows() != m.cols()) throw error("determinant of nonsquare matrix");
  const FieldSpec f = m.field();
  int n = m.rows();
  if (n == 0) return UniPoly::constant(Scalar::one(f));
  PolyMatrix a = m;
  UniPoly prev = UniPoly::constant(Scalar::one(f));
  bool neg = false;
  for (int k = 0; k + 1 < n; ++k) {
    int piv = -1;
    for (int i = k; i < n && piv < 0; ++i)
      if (!a.at(i, k).is_zero()) piv = i;
    if (piv < 0) return UniPoly::zero(f);
    if (piv != k) {
      for (int j = k; j < n; ++j) std::swap(a.at(k, j), a.at(piv, j));
      neg = !neg;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        a.at(i, j) = (a.at(k, k) * a.at(i, j) - a.at(i, k) * a.at(k, j)).divided_by(prev);
    prev = a.at(k, k);
  }
  UniPoly det = a.at(n - 1, n - 1);
  return neg ? -det : det;
}

TorsionReport cokernel_torsion(const PolyMatrix& m) {
  TorsionReport rep;
  WeakPopov w = column_reduce(m);
  if (w.rank < m.rows()) {
    rep.nontorsion = true;
    return rep;
  }
  const FieldSpec f = m.field();
  // det of the square basis = unit * product of the invariant factors, so
  // its root multiplicities are the local torsion lengths.
  UniPoly d = bareiss_determinant(w.basis);
  rep.total_length = d.degree();
  if (rep.total_length == 0) return rep;
  std::vector<std::pair<Scalar, int>> lengths;
  UniPoly rest = d.monic();
  // Root search: t = 0 first, then small integers.
  std::vector<Scalar> candidates{Scalar::zero(f)};
  for (int c = 1; c <= 20; ++c) {
    candidates.push_back(Scalar::of_int(c, f));
    candidates.push_back(Scalar::of_int(-c, f));
  }
  for (const auto& c : candidates) {
    if (rest.degree() <= 0) break;
    int mult = rest.root_multiplicity(c);
    if (mult > 0) {
      lengths.emplace_back(c, mult);
      UniPoly lin = UniPoly::t(f) - UniPoly::constant(c);
      for (int i = 0; i < mult; ++i) rest = rest.divided_by(lin);
    }
  }
  if (rest.degree() > 0) rep.unresolved_factors.emplace_back(rest.str(), rest.degree());
  std::sort(lengths.begin(), lengths.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  rep.local_lengths = std::move(lengths);
  return rep;
}

UniPoly poly_determinant(const PolyMatrix& m) {
  if (m.rows() != m.cols()) throw error("determinant of nonsquare matrix");
  const FieldSpec f = m.field();
  int n = m.rows();
  if (n == 0) return UniPoly::constant(Scalar::one(f));
  if (n == 1) return m.at(0, 0);
  UniPoly det = UniPoly::zero(f);
  for (int j = 0; j < n; ++j) {
    if (m.at(0, j).is_zero()) continue;
    PolyMatrix minor(n - 1, n - 1, f);
    for (int i = 1; i < n; ++i) {
      int cc = 0;
      for (int c = 0; c < n; ++c) {
        if (c == j) continue;
        minor.at(i - 1, cc++) = m.at(i, c);
      }
    }
    UniPoly term = m.at(0, j) * poly_determinant(minor);
    det = (j % 2 == 0) ? det + term : det - term;
  }
  return det;
}

}  // namespace pfib
