#pragma once

// Exact linear algebra over Eigen dense matrices, templated on the scalar
// (Rational or Fp). Everything here is a free function in Eigen style; the
// scalar does the arithmetic, these routines only schedule it.
//
// Row reduction uses partial pivoting by smallest scalar "cost" (bit size for
// rationals) to keep intermediate fractions from blowing up. All canonical
// forms depend only on the input and the fixed column order, never on
// processing order, which is what makes downstream reports deterministic.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "grpd/errors.hpp"
#include "grpd/fp.hpp"
#include "grpd/rational.hpp"

namespace grpd {

template <class S>
using DenseMatrix = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using DenseVector = Eigen::Matrix<S, Eigen::Dynamic, 1>;

using MatrixQ = DenseMatrix<Rational>;
using VectorQ = DenseVector<Rational>;
using MatrixF = DenseMatrix<Fp>;
using VectorF = DenseVector<Fp>;

using Index = Eigen::Index;

/// Pivot preference: lower cost wins. For rationals this is the combined bit
/// size of numerator and denominator.
inline std::size_t pivot_cost(const Rational& x) { return x.bit_size(); }
inline std::size_t pivot_cost(const Fp&) { return 1; }

template <class S>
struct RrefResult {
  DenseMatrix<S> mat;          ///< reduced row echelon form
  std::vector<Index> pivots;   ///< pivot column of each nonzero row
  Index rank = 0;
};

/// Reduced row echelon form with leading ones and zeros above and below each
/// pivot. Unique for a given matrix, independent of pivot-row choices.
template <class S>
RrefResult<S> rref(DenseMatrix<S> m) {
  const Index rows = m.rows(), cols = m.cols();
  RrefResult<S> out;
  Index r = 0;
  for (Index c = 0; c < cols && r < rows; ++c) {
    Index best = -1;
    std::size_t best_cost = 0;
    for (Index i = r; i < rows; ++i) {
      if (m(i, c) == S(0)) continue;
      std::size_t cost = pivot_cost(m(i, c));
      if (best < 0 || cost < best_cost) {
        best = i;
        best_cost = cost;
      }
    }
    if (best < 0) continue;
    if (best != r) m.row(best).swap(m.row(r));
    S lead = m(r, c);
    if (!(lead == S(1))) m.row(r) /= lead;
    for (Index i = 0; i < rows; ++i) {
      if (i == r || m(i, c) == S(0)) continue;
      m.row(i) -= m(i, c) * m.row(r);
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.rank = r;
  out.mat = std::move(m);
  return out;
}

template <class S>
Index rank(const DenseMatrix<S>& m) {
  return rref(m).rank;
}

/// Canonical kernel basis: one column per free column f, with entry 1 at f,
/// minus the reduced column above each pivot, zero elsewhere. Columns of the
/// result satisfy m*v = 0 exactly.
template <class S>
DenseMatrix<S> kernel_basis(const DenseMatrix<S>& m) {
  RrefResult<S> red = rref(m);
  const Index cols = m.cols();
  std::vector<char> is_pivot(static_cast<std::size_t>(cols), 0);
  for (Index p : red.pivots) is_pivot[static_cast<std::size_t>(p)] = 1;
  std::vector<Index> free_cols;
  for (Index c = 0; c < cols; ++c)
    if (!is_pivot[static_cast<std::size_t>(c)]) free_cols.push_back(c);

  DenseMatrix<S> k = DenseMatrix<S>::Zero(cols, static_cast<Index>(free_cols.size()));
  for (std::size_t j = 0; j < free_cols.size(); ++j) {
    Index f = free_cols[j];
    k(f, static_cast<Index>(j)) = S(1);
    for (Index i = 0; i < red.rank; ++i)
      k(red.pivots[static_cast<std::size_t>(i)], static_cast<Index>(j)) = -red.mat(i, f);
  }
  return k;
}

/// One exact solution of m*x = b, or nullopt when the system is inconsistent.
/// Free variables are set to zero.
template <class S>
std::optional<DenseVector<S>> solve(const DenseMatrix<S>& m, const DenseVector<S>& b) {
  if (b.rows() != m.rows())
    throw DimensionMismatchError("solve: rhs has " + std::to_string(b.rows()) +
                                 " rows, matrix has " + std::to_string(m.rows()));
  DenseMatrix<S> aug(m.rows(), m.cols() + 1);
  aug.leftCols(m.cols()) = m;
  aug.col(m.cols()) = b;
  RrefResult<S> red = rref(std::move(aug));
  for (Index p : red.pivots)
    if (p == m.cols()) return std::nullopt;
  DenseVector<S> x = DenseVector<S>::Zero(m.cols());
  for (Index i = 0; i < red.rank; ++i)
    x(red.pivots[static_cast<std::size_t>(i)]) = red.mat(i, m.cols());
  return x;
}

/// Canonical basis of the column space: columns form the unique reduced
/// column echelon basis (transpose of rref of the transpose).
template <class S>
DenseMatrix<S> column_space_canonical(const DenseMatrix<S>& m) {
  RrefResult<S> red = rref(DenseMatrix<S>(m.transpose()));
  DenseMatrix<S> out(m.rows(), red.rank);
  for (Index i = 0; i < red.rank; ++i) out.col(i) = red.mat.row(i).transpose();
  return out;
}

/// Canonical basis of (col span of a) ∩ (col span of b).
template <class S>
DenseMatrix<S> intersect_column_spaces(const DenseMatrix<S>& a, const DenseMatrix<S>& b) {
  if (a.rows() != b.rows())
    throw DimensionMismatchError("intersect: ambient dimensions differ");
  DenseMatrix<S> stacked(a.rows(), a.cols() + b.cols());
  stacked.leftCols(a.cols()) = a;
  stacked.rightCols(b.cols()) = b;
  DenseMatrix<S> k = kernel_basis(stacked);
  DenseMatrix<S> inter(a.rows(), k.cols());
  for (Index j = 0; j < k.cols(); ++j)
    inter.col(j) = a * k.col(j).head(a.cols());
  return column_space_canonical(inter);
}

/// Subspace basis in reduced column echelon form, with the pivot rows
/// remembered so that coordinates of a member vector can be read off directly
/// (the basis restricted to the pivot rows is the identity).
template <class S>
struct CanonicalBasis {
  DenseMatrix<S> cols;             // ambient_dim x dim
  std::vector<Index> pivot_rows;   // one per basis column

  Index dim() const { return cols.cols(); }
  Index ambient() const { return cols.rows(); }

  static CanonicalBasis from_span(const DenseMatrix<S>& span) {
    return from_echelon(column_space_canonical(span));
  }

  /// Adopt a matrix whose columns are already a canonical basis, i.e. there
  /// is a set of rows on which the matrix restricts to the identity. Both the
  /// reduced column echelon convention and the kernel-basis convention (ones
  /// at the free rows) qualify.
  static CanonicalBasis from_echelon(DenseMatrix<S> echelon) {
    CanonicalBasis cb;
    cb.pivot_rows = identity_rows(echelon);
    cb.cols = std::move(echelon);
    return cb;
  }

  /// Coordinates of v in this basis; throws if v lies outside the span.
  DenseVector<S> coords(const DenseVector<S>& v) const {
    if (v.rows() != cols.rows())
      throw DimensionMismatchError("coords: ambient dimension mismatch");
    DenseVector<S> c(dim());
    for (Index j = 0; j < dim(); ++j) c(j) = v(pivot_rows[static_cast<std::size_t>(j)]);
    DenseVector<S> residual = v - cols * c;
    for (Index i = 0; i < residual.rows(); ++i)
      if (!(residual(i) == S(0)))
        throw DimensionMismatchError("coords: vector is outside the subspace");
    return c;
  }

  bool contains(const DenseVector<S>& v) const {
    if (v.rows() != cols.rows()) return false;
    DenseVector<S> c(dim());
    for (Index j = 0; j < dim(); ++j) c(j) = v(pivot_rows[static_cast<std::size_t>(j)]);
    DenseVector<S> residual = v - cols * c;
    for (Index i = 0; i < residual.rows(); ++i)
      if (!(residual(i) == S(0))) return false;
    return true;
  }

 private:
  // For each column j, the first row where the matrix reads like e_j.
  static std::vector<Index> identity_rows(const DenseMatrix<S>& m) {
    std::vector<Index> rows;
    rows.reserve(static_cast<std::size_t>(m.cols()));
    for (Index j = 0; j < m.cols(); ++j) {
      Index found = -1;
      for (Index i = 0; i < m.rows() && found < 0; ++i) {
        if (!(m(i, j) == S(1))) continue;
        bool clean = true;
        for (Index j2 = 0; j2 < m.cols() && clean; ++j2)
          if (j2 != j && !(m(i, j2) == S(0))) clean = false;
        if (clean) found = i;
      }
      if (found < 0)
        throw InvariantViolationError("matrix is not a canonical subspace basis");
      rows.push_back(found);
    }
    return rows;
  }
};

/// Incremental kernel of a growing sparse row system.
///
/// Rows are fed one at a time and reduced against an internal row echelon
/// (without back-substitution, which is deferred to finalization). Intended
/// for the large, very sparse constraint systems produced by naturality
/// squares and commutator equations, where materializing the full dense
/// matrix would be wasteful. The finalized kernel basis is identical to
/// kernel_basis() of the stacked rows.
template <class S>
class IncrementalKernel {
 public:
  using Term = std::pair<Index, S>;
  using Row = std::vector<Term>;  // sorted by column index, nonzero coeffs

  explicit IncrementalKernel(Index n) : n_(n) {}

  Index ambient() const { return n_; }
  Index rank() const { return static_cast<Index>(rows_.size()); }
  Index dim() const { return n_ - rank(); }

  /// Returns true when the row increased the rank.
  bool add_row(Row row) {
    tidy(row);
    while (!row.empty()) {
      Index lead = row.front().first;
      auto it = rows_.find(lead);
      if (it == rows_.end()) {
        S inv = S(1) / row.front().second;
        if (!(inv == S(1)))
          for (auto& t : row) t.second *= inv;
        else
          row.front().second = S(1);
        rows_.emplace(lead, std::move(row));
        return true;
      }
      axpy(row, -row.front().second, it->second);
    }
    return false;
  }

  void add_dense_row(const DenseVector<S>& v) {
    Row row;
    for (Index i = 0; i < v.rows(); ++i)
      if (!(v(i) == S(0))) row.emplace_back(i, v(i));
    add_row(std::move(row));
  }

  /// Canonical kernel basis (same convention as kernel_basis).
  DenseMatrix<S> kernel() const {
    // Full back-substitution pass: walk pivots from the right so every row we
    // subtract is already reduced.
    std::map<Index, Row> reduced = rows_;
    for (auto it = reduced.rbegin(); it != reduced.rend(); ++it) {
      Row& r = it->second;
      bool again = true;
      while (again) {
        again = false;
        for (std::size_t k = 1; k < r.size(); ++k) {
          auto pit = reduced.find(r[k].first);
          if (pit == reduced.end()) continue;
          axpy(r, -r[k].second, pit->second);
          again = true;
          break;
        }
      }
    }
    std::vector<char> is_pivot(static_cast<std::size_t>(n_), 0);
    for (const auto& [c, row] : reduced) is_pivot[static_cast<std::size_t>(c)] = 1;
    std::vector<Index> free_cols;
    for (Index c = 0; c < n_; ++c)
      if (!is_pivot[static_cast<std::size_t>(c)]) free_cols.push_back(c);

    DenseMatrix<S> k = DenseMatrix<S>::Zero(n_, static_cast<Index>(free_cols.size()));
    std::vector<Index> col_of_free(static_cast<std::size_t>(n_), -1);
    for (std::size_t j = 0; j < free_cols.size(); ++j)
      col_of_free[static_cast<std::size_t>(free_cols[j])] = static_cast<Index>(j);
    for (std::size_t j = 0; j < free_cols.size(); ++j)
      k(free_cols[j], static_cast<Index>(j)) = S(1);
    for (const auto& [pivot_col, row] : reduced)
      for (const auto& [c, coeff] : row)
        if (c != pivot_col && col_of_free[static_cast<std::size_t>(c)] >= 0)
          k(pivot_col, col_of_free[static_cast<std::size_t>(c)]) = -coeff;
    return k;
  }

  CanonicalBasis<S> kernel_canonical() const {
    return CanonicalBasis<S>::from_echelon(kernel());
  }

 private:
  static void tidy(Row& row) {
    std::sort(row.begin(), row.end(),
              [](const Term& a, const Term& b) { return a.first < b.first; });
    Row out;
    out.reserve(row.size());
    for (auto& t : row) {
      if (!out.empty() && out.back().first == t.first)
        out.back().second += t.second;
      else
        out.push_back(std::move(t));
    }
    out.erase(std::remove_if(out.begin(), out.end(),
                             [](const Term& t) { return t.second == S(0); }),
              out.end());
    row = std::move(out);
  }

  // row += c * other (sparse merge); drops cancelled terms.
  static void axpy(Row& row, const S& c, const Row& other) {
    Row out;
    out.reserve(row.size() + other.size());
    std::size_t i = 0, j = 0;
    while (i < row.size() || j < other.size()) {
      if (j >= other.size() || (i < row.size() && row[i].first < other[j].first)) {
        out.push_back(std::move(row[i++]));
      } else if (i >= row.size() || other[j].first < row[i].first) {
        out.emplace_back(other[j].first, c * other[j].second);
        ++j;
      } else {
        S s = row[i].second + c * other[j].second;
        if (!(s == S(0))) out.emplace_back(row[i].first, std::move(s));
        ++i;
        ++j;
      }
    }
    out.erase(std::remove_if(out.begin(), out.end(),
                             [](const Term& t) { return t.second == S(0); }),
              out.end());
    row = std::move(out);
  }

  Index n_;
  std::map<Index, Row> rows_;  // pivot column -> normalized row
};

/// Is the kernel basis convention satisfied, i.e. m * k == 0 columnwise.
template <class S>
bool annihilates(const DenseMatrix<S>& m, const DenseMatrix<S>& k) {
  DenseMatrix<S> prod = m * k;
  for (Index i = 0; i < prod.rows(); ++i)
    for (Index j = 0; j < prod.cols(); ++j)
      if (!(prod(i, j) == S(0))) return false;
  return true;
}

template <class S>
bool is_zero_matrix(const DenseMatrix<S>& m) {
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      if (!(m(i, j) == S(0))) return false;
  return true;
}

}  // namespace grpd
