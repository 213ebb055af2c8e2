#ifndef CHERDIM_EXACTLA_HPP
#define CHERDIM_EXACTLA_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "cherdim/bigint.hpp"

namespace cherdim::exactla {

// One matrix row, sparse: (column, value) sorted by column, values nonzero.
using SparseRow = std::vector<std::pair<int, BigRat>>;

// Exact rational matrix.  Rows are kept sparse whenever the fill is below
// the density threshold; small dense inputs are stored the same way since
// the elimination code walks rows either way.
class QMatrix {
 public:
  QMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(rows) {}

  static QMatrix from_rows(const std::vector<std::vector<BigRat>>& dense);
  static QMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const SparseRow& row(int i) const { return data_[i]; }

  void set(int i, int j, const BigRat& v);
  BigRat get(int i, int j) const;
  void append_row(SparseRow r);

  double density() const;
  // Storage policy threshold (fraction of nonzero entries) below which the
  // representation counts as sparse.
  static constexpr double kSparseThreshold = 0.05;
  bool is_sparse() const { return density() < kSparseThreshold; }

  QMatrix transpose() const;

 private:
  int rows_, cols_;
  std::vector<SparseRow> data_;
};

// Rank over the rationals by fraction-free (Bareiss) elimination.
int rank(const QMatrix& m);

// Result of reduced-echelon elimination: enough to test row-space
// membership and to read off a complement basis.  Column order is the
// caller's (for polynomial spaces: graded reverse lexicographic).
struct EchelonForm {
  std::vector<int> pivot_cols;          // ascending
  std::vector<SparseRow> reduced_rows;  // one per pivot, leading coeff 1
};

EchelonForm echelonize(const QMatrix& m);

// Basis of the common fixed space  ∩_g ker(g − I)  of square generator
// matrices.  Fixed vectors of the generators are fixed by the whole
// generated group, so no group enumeration is involved.
std::vector<std::vector<BigRat>> fixed_space(const std::vector<QMatrix>& generators,
                                             int dim);

// Basis of ker(m) (column kernel).
std::vector<std::vector<BigRat>> kernel(const QMatrix& m);

// Incremental reduced row echelon structure over BigRat.
// insert() returns false when the vector lies in the current row space.
class EchelonBasis {
 public:
  explicit EchelonBasis(int cols) : cols_(cols) {}

  bool insert(SparseRow v);
  // Reduces v against the basis (in place); the result has no support on
  // pivot columns.
  void reduce(SparseRow& v) const;
  bool contains(SparseRow v) const {
    reduce(v);
    return v.empty();
  }

  int rank() const { return (int)rows_.size(); }
  int cols() const { return cols_; }
  const std::vector<int>& pivots() const { return pivot_cols_; }
  bool is_pivot(int col) const { return col < (int)pivot_of_.size() && pivot_of_[col] >= 0; }
  // Row whose pivot is `col`; requires is_pivot(col).
  const SparseRow& pivot_row(int col) const { return rows_[pivot_of_[col]]; }

 private:
  int cols_;
  std::vector<SparseRow> rows_;     // normalized, pairwise reduced
  std::vector<int> pivot_cols_;     // pivot of rows_[k]
  std::vector<int> pivot_of_;       // col -> row index or -1
};

SparseRow to_sparse(const std::vector<BigRat>& dense);
std::vector<BigRat> to_dense(const SparseRow& row, int cols);

}  // namespace cherdim::exactla

#endif
