#include "loopmod/linalg.hpp"

#include <sstream>
#include <utility>

namespace loopmod {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Cyc(1);
  return m;
}

Matrix Matrix::from_columns(std::size_t rows, const std::vector<Vec>& cols) {
  Matrix m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows) throw std::invalid_argument("Matrix::from_columns: length mismatch");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

Matrix Matrix::from_rows(std::size_t cols, const std::vector<Vec>& rows) {
  Matrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw std::invalid_argument("Matrix::from_rows: length mismatch");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Matrix Matrix::from_flat(std::size_t rows, std::size_t cols, const Vec& flat) {
  if (flat.size() != rows * cols) throw std::invalid_argument("Matrix::from_flat: length mismatch");
  Matrix m(rows, cols);
  m.a_ = flat;
  return m;
}

Vec Matrix::column(std::size_t j) const {
  Vec v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

Vec Matrix::row(std::size_t i) const {
  return Vec(a_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
             a_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("Matrix product: dimension mismatch");
  Matrix r(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Cyc& x = (*this)(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) {
        const Cyc& y = o(k, j);
        if (y.is_zero()) continue;
        r(i, j) += x * y;
      }
    }
  }
  return r;
}

Vec Matrix::operator*(const Vec& v) const {
  if (cols_ != v.size()) throw std::invalid_argument("Matrix-vector product: dimension mismatch");
  Vec r(rows_);
  for (std::size_t k = 0; k < cols_; ++k) {
    if (v[k].is_zero()) continue;
    for (std::size_t i = 0; i < rows_; ++i) {
      const Cyc& x = (*this)(i, k);
      if (!x.is_zero()) r[i] += x * v[k];
    }
  }
  return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("Matrix sum: dimension mismatch");
  Matrix r = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) {
    if (!o.a_[i].is_zero()) r.a_[i] += o.a_[i];
  }
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("Matrix difference: dimension mismatch");
  Matrix r = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) {
    if (!o.a_[i].is_zero()) r.a_[i] -= o.a_[i];
  }
  return r;
}

Matrix Matrix::scaled(const Cyc& c) const {
  Matrix r(rows_, cols_);
  if (c.is_zero()) return r;
  for (std::size_t i = 0; i < a_.size(); ++i) {
    if (!a_[i].is_zero()) r.a_[i] = a_[i] * c;
  }
  return r;
}

Matrix Matrix::transposed() const {
  Matrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  }
  return r;
}

bool Matrix::operator==(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) return false;
  for (std::size_t i = 0; i < a_.size(); ++i) {
    if (!(a_[i] == o.a_[i])) return false;
  }
  return true;
}

bool Matrix::is_zero() const {
  for (const auto& x : a_) {
    if (!x.is_zero()) return false;
  }
  return true;
}

bool Matrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      const Cyc& x = (*this)(i, j);
      if (i == j ? !x.is_one() : !x.is_zero()) return false;
    }
  }
  return true;
}

Cyc Matrix::trace() const {
  Cyc t;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

std::size_t Matrix::nonzero_count() const {
  std::size_t n = 0;
  for (const auto& x : a_) n += x.is_zero() ? 0 : 1;
  return n;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j);
    os << "]";
  }
  os << "]";
  return os.str();
}

bool is_zero_vec(const Vec& v) {
  for (const auto& x : v) {
    if (!x.is_zero()) return false;
  }
  return true;
}

Vec add_vec(const Vec& a, const Vec& b) {
  Vec r = a;
  axpy(r, Cyc(1), b);
  return r;
}

Vec sub_vec(const Vec& a, const Vec& b) {
  Vec r = a;
  axpy(r, Cyc(-1), b);
  return r;
}

Vec scale_vec(const Vec& a, const Cyc& c) {
  Vec r(a.size());
  if (c.is_zero()) return r;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i].is_zero()) r[i] = a[i] * c;
  }
  return r;
}

void axpy(Vec& v, const Cyc& c, const Vec& w) {
  if (v.size() != w.size()) throw std::invalid_argument("axpy: length mismatch");
  if (c.is_zero()) return;
  bool unit = c.is_one();
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (w[i].is_zero()) continue;
    if (unit) {
      v[i] += w[i];
    } else {
      v[i] += c * w[i];
    }
  }
}

Rref rref(Matrix m) {
  Rref out;
  std::size_t rows = m.rows();
  std::size_t cols = m.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m(p, c).is_zero()) ++p;
    if (p == rows) continue;
    if (p != r) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(m(p, j), m(r, j));
    }
    if (!m(r, c).is_one()) {
      Cyc inv = m(r, c).inverse();
      for (std::size_t j = c; j < cols; ++j) {
        if (!m(r, j).is_zero()) m(r, j) = m(r, j) * inv;
      }
    }
    std::vector<std::size_t> support;
    for (std::size_t j = c; j < cols; ++j) {
      if (!m(r, j).is_zero()) support.push_back(j);
    }
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      Cyc f = m(i, c);
      for (auto j : support) m(i, j) -= f * m(r, j);
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.reduced = std::move(m);
  return out;
}

std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

std::vector<Vec> kernel(const Matrix& m) {
  Rref r = rref(m);
  std::size_t cols = m.cols();
  std::vector<bool> is_pivot(cols, false);
  for (auto p : r.pivots) is_pivot[p] = true;
  std::vector<Vec> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    Vec x(cols);
    x[f] = Cyc(1);
    for (std::size_t i = 0; i < r.pivots.size(); ++i) {
      const Cyc& v = r.reduced(i, f);
      if (!v.is_zero()) x[r.pivots[i]] = -v;
    }
    basis.push_back(std::move(x));
  }
  return basis;
}

SolveResult solve(const Matrix& a, const Vec& b) {
  if (b.size() != a.rows()) throw std::invalid_argument("solve: right-hand side length mismatch");
  Matrix aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  Rref r = rref(std::move(aug));
  SolveResult out;
  out.kernel = kernel(a);
  if (!r.pivots.empty() && r.pivots.back() == a.cols()) return out;
  Vec x(a.cols());
  for (std::size_t i = 0; i < r.pivots.size(); ++i) x[r.pivots[i]] = r.reduced(i, a.cols());
  out.solution = std::move(x);
  return out;
}

Matrix inverse(const Matrix& m) {
  if (m.rows() != m.cols()) throw SingularMatrix("inverse: matrix is not square");
  std::size_t n = m.rows();
  Matrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = Cyc(1);
  }
  Rref r = rref(std::move(aug));
  if (r.pivots.size() < n || r.pivots[n - 1] != n - 1) throw SingularMatrix("inverse: matrix is singular");
  Matrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = r.reduced(i, n + j);
  }
  return inv;
}

Cyc det(Matrix m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("det: matrix is not square");
  std::size_t n = m.rows();
  Cyc d(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c).is_zero()) ++p;
    if (p == n) return Cyc();
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      d = -d;
    }
    d = d * m(c, c);
    Cyc inv = m(c, c).inverse();
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m(i, c).is_zero()) continue;
      Cyc f = m(i, c) * inv;
      for (std::size_t j = c; j < n; ++j) {
        if (!m(c, j).is_zero()) m(i, j) -= f * m(c, j);
      }
    }
  }
  return d;
}

bool EchelonBasis::insert(const Vec& v) {
  if (v.size() != dim_) throw std::invalid_argument("EchelonBasis::insert: length mismatch");
  Vec r = v;
  Vec combo;
  if (track_) {
    combo.assign(inserted_.size() + 1, Cyc());
    combo.back() = Cyc(1);
  }
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    Cyc c = r[pivots_[i]];
    if (c.is_zero()) continue;
    axpy(r, -c, rows_[i]);
    if (track_) {
      for (std::size_t j = 0; j < combos_[i].size(); ++j) {
        if (!combos_[i][j].is_zero()) combo[j] -= c * combos_[i][j];
      }
    }
  }
  std::size_t p = 0;
  while (p < dim_ && r[p].is_zero()) ++p;
  if (p == dim_) return false;
  if (!r[p].is_one()) {
    Cyc inv = r[p].inverse();
    r = scale_vec(r, inv);
    if (track_) combo = scale_vec(combo, inv);
  }
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    Cyc c = rows_[i][p];
    if (c.is_zero()) continue;
    axpy(rows_[i], -c, r);
    if (track_) {
      combos_[i].resize(combo.size());
      axpy(combos_[i], -c, combo);
    }
  }
  if (track_) {
    for (auto& cmb : combos_) cmb.resize(combo.size());
    combos_.push_back(std::move(combo));
  }
  rows_.push_back(std::move(r));
  pivots_.push_back(p);
  inserted_.push_back(v);
  return true;
}

Vec EchelonBasis::reduce(const Vec& v) const {
  if (v.size() != dim_) throw std::invalid_argument("EchelonBasis::reduce: length mismatch");
  Vec r = v;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    Cyc c = r[pivots_[i]];
    if (!c.is_zero()) axpy(r, -c, rows_[i]);
  }
  return r;
}

bool EchelonBasis::contains(const Vec& v) const { return is_zero_vec(reduce(v)); }

std::optional<Vec> EchelonBasis::coordinates(const Vec& v) const {
  if (!track_) throw std::logic_error("EchelonBasis::coordinates requires coordinate tracking");
  if (v.size() != dim_) throw std::invalid_argument("EchelonBasis::coordinates: length mismatch");
  Vec coords(inserted_.size());
  Vec r = v;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    Cyc c = r[pivots_[i]];
    if (c.is_zero()) continue;
    axpy(r, -c, rows_[i]);
    for (std::size_t j = 0; j < combos_[i].size(); ++j) {
      if (!combos_[i][j].is_zero()) coords[j] += c * combos_[i][j];
    }
  }
  if (!is_zero_vec(r)) return std::nullopt;
  return coords;
}

std::vector<Vec> relations(const std::vector<Vec>& images, std::size_t target_dim) {
  std::vector<std::size_t> live;
  for (std::size_t r = 0; r < target_dim; ++r) {
    for (const auto& v : images) {
      if (!v[r].is_zero()) {
        live.push_back(r);
        break;
      }
    }
  }
  Matrix m(live.size(), images.size());
  for (std::size_t i = 0; i < live.size(); ++i)
    for (std::size_t j = 0; j < images.size(); ++j) m(i, j) = images[j][live[i]];
  return kernel(m);
}

namespace {

// a - c * b over sorted sparse rows.
SparseSystem::Row sub_scaled(const SparseSystem::Row& a, const Cyc& c, const SparseSystem::Row& b) {
  SparseSystem::Row out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.push_back({b[j].first, -(c * b[j].second)});
      ++j;
    } else {
      Cyc v = a[i].second - c * b[j].second;
      if (!v.is_zero()) out.push_back({a[i].first, std::move(v)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

void SparseSystem::add(Row row) {
  while (!row.empty()) {
    std::size_t lead = row.front().first;
    if (lead >= n_) throw std::invalid_argument("SparseSystem: column out of range");
    std::size_t p = pivot_row_[lead];
    if (p == npos) {
      Cyc inv = row.front().second.inverse();
      for (auto& e : row) e.second = e.second * inv;
      pivot_row_[lead] = rows_.size();
      rows_.push_back(std::move(row));
      return;
    }
    Cyc c = row.front().second;
    row = sub_scaled(row, c, rows_[p]);
  }
}

std::vector<Vec> SparseSystem::kernel() const {
  std::vector<Vec> out;
  for (std::size_t f = 0; f < n_; ++f) {
    if (pivot_row_[f] != npos) continue;
    Vec x(n_);
    x[f] = Cyc(1);
    // Pivot rows only reference later columns, so solve from the right.
    for (std::size_t c = n_; c-- > 0;) {
      std::size_t p = pivot_row_[c];
      if (p == npos) continue;
      Cyc acc;
      for (std::size_t k = 1; k < rows_[p].size(); ++k) {
        const auto& [col, v] = rows_[p][k];
        if (!x[col].is_zero()) acc -= v * x[col];
      }
      x[c] = std::move(acc);
    }
    out.push_back(std::move(x));
  }
  return out;
}

}  // namespace loopmod
