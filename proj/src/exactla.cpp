#include "cherdim/exactla.hpp"

#include <algorithm>
#include <map>

namespace cherdim::exactla {

SparseRow to_sparse(const std::vector<BigRat>& dense) {
  SparseRow r;
  for (int j = 0; j < (int)dense.size(); ++j)
    if (!dense[j].is_zero()) r.emplace_back(j, dense[j]);
  return r;
}

std::vector<BigRat> to_dense(const SparseRow& row, int cols) {
  std::vector<BigRat> d(cols, BigRat(0));
  for (const auto& [j, v] : row) d[j] = v;
  return d;
}

QMatrix QMatrix::from_rows(const std::vector<std::vector<BigRat>>& dense) {
  int r = (int)dense.size();
  int c = r ? (int)dense[0].size() : 0;
  QMatrix m(r, c);
  for (int i = 0; i < r; ++i) m.data_[i] = to_sparse(dense[i]);
  return m;
}

QMatrix QMatrix::identity(int n) {
  QMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.data_[i].emplace_back(i, BigRat(1));
  return m;
}

void QMatrix::set(int i, int j, const BigRat& v) {
  auto& row = data_[i];
  auto it = std::lower_bound(row.begin(), row.end(), j,
                             [](const auto& e, int col) { return e.first < col; });
  if (it != row.end() && it->first == j) {
    if (v.is_zero()) row.erase(it);
    else it->second = v;
  } else if (!v.is_zero()) {
    row.insert(it, {j, v});
  }
}

BigRat QMatrix::get(int i, int j) const {
  const auto& row = data_[i];
  auto it = std::lower_bound(row.begin(), row.end(), j,
                             [](const auto& e, int col) { return e.first < col; });
  if (it != row.end() && it->first == j) return it->second;
  return BigRat(0);
}

void QMatrix::append_row(SparseRow r) {
  data_.push_back(std::move(r));
  ++rows_;
}

double QMatrix::density() const {
  if (rows_ == 0 || cols_ == 0) return 0.0;
  size_t nnz = 0;
  for (const auto& r : data_) nnz += r.size();
  return (double)nnz / ((double)rows_ * (double)cols_);
}

QMatrix QMatrix::transpose() const {
  QMatrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (const auto& [j, v] : data_[i]) t.data_[j].emplace_back(i, v);
  return t;
}

namespace {

// Integer row content for the Bareiss working copy: clear denominators,
// then divide by the gcd so entries start small.
std::vector<std::vector<BigInt>> integer_rows(const QMatrix& m) {
  std::vector<std::vector<BigInt>> out;
  out.reserve(m.rows());
  for (int i = 0; i < m.rows(); ++i) {
    BigInt lcm(1);
    for (const auto& [j, v] : m.row(i)) {
      BigInt g = gcd(lcm, v.den());
      lcm = div_exact(lcm, g) * v.den();
    }
    std::vector<BigInt> row(m.cols(), BigInt(0));
    BigInt content(0);
    for (const auto& [j, v] : m.row(i)) {
      row[j] = v.num() * div_exact(lcm, v.den());
      content = gcd(content, row[j]);
    }
    if (!content.is_zero() && !content.is_one())
      for (auto& e : row)
        if (!e.is_zero()) e = div_exact(e, content);
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace

int rank(const QMatrix& m) {
  auto a = integer_rows(m);
  const int nr = (int)a.size();
  const int nc = m.cols();
  int rk = 0;
  BigInt prev(1);
  for (int col = 0; col < nc && rk < nr; ++col) {
    // Deterministic pivot: the row (at or below rk) with fewest nonzeros
    // among those with a nonzero in this column, ties by index.
    int piv = -1;
    size_t best = SIZE_MAX;
    for (int i = rk; i < nr; ++i) {
      if (a[i][col].is_zero()) continue;
      size_t nnz = 0;
      for (const auto& e : a[i])
        if (!e.is_zero()) ++nnz;
      if (nnz < best) { best = nnz; piv = i; }
    }
    if (piv < 0) continue;
    std::swap(a[rk], a[piv]);
    const BigInt p = a[rk][col];
    for (int i = rk + 1; i < nr; ++i) {
      if (a[i][col].is_zero()) {
        // Still rescale by the one-step Bareiss rule to keep the minor
        // normalization consistent across rows.
        for (int j = col + 1; j < nc; ++j)
          if (!a[i][j].is_zero()) a[i][j] = div_exact(p * a[i][j], prev);
      } else {
        const BigInt f = a[i][col];
        for (int j = col + 1; j < nc; ++j)
          a[i][j] = div_exact(p * a[i][j] - f * a[rk][j], prev);
        a[i][col] = BigInt(0);
      }
    }
    prev = p;
    ++rk;
  }
  return rk;
}

bool EchelonBasis::insert(SparseRow v) {
  reduce(v);
  if (v.empty()) return false;
  // Pivot on the smallest remaining column; normalize leading coeff to 1.
  int pcol = v.front().first;
  BigRat lead = v.front().second;
  for (auto& [j, val] : v) val = val / lead;
  // Back-substitute into existing rows.
  for (size_t k = 0; k < rows_.size(); ++k) {
    auto it = std::lower_bound(rows_[k].begin(), rows_[k].end(), pcol,
                               [](const auto& e, int col) { return e.first < col; });
    if (it == rows_[k].end() || it->first != pcol) continue;
    BigRat c = it->second;
    SparseRow out;
    out.reserve(rows_[k].size() + v.size());
    auto a = rows_[k].begin();
    auto b = v.begin();
    while (a != rows_[k].end() || b != v.end()) {
      if (b == v.end() || (a != rows_[k].end() && a->first < b->first)) {
        out.push_back(*a++);
      } else if (a == rows_[k].end() || b->first < a->first) {
        BigRat nv = BigRat(0) - c * b->second;
        if (!nv.is_zero()) out.emplace_back(b->first, nv);
        ++b;
      } else {
        BigRat nv = a->second - c * b->second;
        if (!nv.is_zero()) out.emplace_back(a->first, nv);
        ++a;
        ++b;
      }
    }
    rows_[k] = std::move(out);
  }
  if ((int)pivot_of_.size() < cols_) pivot_of_.resize(cols_, -1);
  pivot_of_[pcol] = (int)rows_.size();
  pivot_cols_.push_back(pcol);
  rows_.push_back(std::move(v));
  return true;
}

void EchelonBasis::reduce(SparseRow& v) const {
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [j, val] : v) {
      if (j < (int)pivot_of_.size() && pivot_of_[j] >= 0) {
        const SparseRow& prow = rows_[pivot_of_[j]];
        BigRat c = val;  // prow has leading 1 at column j
        SparseRow out;
        out.reserve(v.size() + prow.size());
        auto a = v.begin();
        auto b = prow.begin();
        while (a != v.end() || b != prow.end()) {
          if (b == prow.end() || (a != v.end() && a->first < b->first)) {
            out.push_back(*a++);
          } else if (a == v.end() || b->first < a->first) {
            BigRat nv = BigRat(0) - c * b->second;
            if (!nv.is_zero()) out.emplace_back(b->first, nv);
            ++b;
          } else {
            BigRat nv = a->second - c * b->second;
            if (!nv.is_zero()) out.emplace_back(a->first, nv);
            ++a;
            ++b;
          }
        }
        v = std::move(out);
        changed = true;
        break;
      }
    }
  }
}

EchelonForm echelonize(const QMatrix& m) {
  EchelonBasis basis(m.cols());
  for (int i = 0; i < m.rows(); ++i) basis.insert(m.row(i));
  EchelonForm ef;
  ef.pivot_cols = basis.pivots();
  std::sort(ef.pivot_cols.begin(), ef.pivot_cols.end());
  for (int col : ef.pivot_cols) ef.reduced_rows.push_back(basis.pivot_row(col));
  return ef;
}

std::vector<std::vector<BigRat>> kernel(const QMatrix& m) {
  EchelonForm ef = echelonize(m);
  std::vector<bool> is_piv(m.cols(), false);
  for (int c : ef.pivot_cols) is_piv[c] = true;
  std::vector<std::vector<BigRat>> basis;
  for (int free = 0; free < m.cols(); ++free) {
    if (is_piv[free]) continue;
    std::vector<BigRat> v(m.cols(), BigRat(0));
    v[free] = BigRat(1);
    // pivot value = -(coefficient of the free column in its reduced row)
    for (size_t k = 0; k < ef.pivot_cols.size(); ++k) {
      for (const auto& [j, val] : ef.reduced_rows[k])
        if (j == free) v[ef.pivot_cols[k]] = BigRat(0) - val;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<std::vector<BigRat>> fixed_space(const std::vector<QMatrix>& generators,
                                             int dim) {
  QMatrix stacked(0, dim);
  for (const auto& g : generators) {
    if (g.rows() != dim || g.cols() != dim)
      throw internal_error("fixed_space: generator is not dim x dim");
    for (int i = 0; i < dim; ++i) {
      SparseRow r = g.row(i);
      // subtract identity
      bool found = false;
      for (auto& [j, v] : r)
        if (j == i) { v = v - BigRat(1); found = true; }
      if (!found) {
        r.emplace_back(i, BigRat(-1));
        std::sort(r.begin(), r.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
      }
      SparseRow clean;
      for (auto& e : r)
        if (!e.second.is_zero()) clean.push_back(e);
      stacked.append_row(std::move(clean));
    }
  }
  if (generators.empty()) {
    std::vector<std::vector<BigRat>> basis;
    for (int i = 0; i < dim; ++i) {
      std::vector<BigRat> v(dim, BigRat(0));
      v[i] = BigRat(1);
      basis.push_back(std::move(v));
    }
    return basis;
  }
  return kernel(stacked);
}

}  // namespace cherdim::exactla
