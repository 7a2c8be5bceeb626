// Dense exact linear algebra over cyclotomic fields.
#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "loopmod/cyclotomic.hpp"

namespace loopmod {

using Vec = std::vector<Cyc>;

class SingularMatrix : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  static Matrix identity(std::size_t n);
  static Matrix from_columns(std::size_t rows, const std::vector<Vec>& cols);
  static Matrix from_rows(std::size_t cols, const std::vector<Vec>& rows);
  // Row-major unflattening of a vector of length rows*cols.
  static Matrix from_flat(std::size_t rows, std::size_t cols, const Vec& flat);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Cyc& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Cyc& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  Vec column(std::size_t j) const;
  Vec row(std::size_t i) const;
  const Vec& flat() const { return a_; }

  Matrix operator*(const Matrix& o) const;
  Vec operator*(const Vec& v) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix scaled(const Cyc& c) const;
  Matrix transposed() const;
  bool operator==(const Matrix& o) const;
  bool is_zero() const;
  bool is_identity() const;
  Cyc trace() const;
  std::size_t nonzero_count() const;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Vec a_;
};

bool is_zero_vec(const Vec& v);
Vec add_vec(const Vec& a, const Vec& b);
Vec sub_vec(const Vec& a, const Vec& b);
Vec scale_vec(const Vec& a, const Cyc& c);
// v += c * w
void axpy(Vec& v, const Cyc& c, const Vec& w);

struct Rref {
  Matrix reduced;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

Rref rref(Matrix m);
std::size_t rank(const Matrix& m);
// Basis of {x : m x = 0}, one vector per free column with a 1 in that column.
std::vector<Vec> kernel(const Matrix& m);

struct SolveResult {
  std::optional<Vec> solution;  // empty when the system is inconsistent
  std::vector<Vec> kernel;
  bool consistent() const { return solution.has_value(); }
};

SolveResult solve(const Matrix& a, const Vec& b);
Matrix inverse(const Matrix& m);
Cyc det(Matrix m);

// Incrementally maintained fully reduced row-echelon basis of a subspace of F^n.
// Coordinates are reported with respect to the vectors in insertion order.
class EchelonBasis {
 public:
  explicit EchelonBasis(std::size_t ambient_dim, bool track_coordinates = false)
      : dim_(ambient_dim), track_(track_coordinates) {}

  std::size_t ambient_dim() const { return dim_; }
  std::size_t size() const { return inserted_.size(); }
  const std::vector<Vec>& vectors() const { return inserted_; }
  const std::vector<Vec>& reduced_rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  // Adds v if it is independent of the current span; returns whether it was added.
  bool insert(const Vec& v);
  bool contains(const Vec& v) const;
  // Residue of v after elimination against the basis (zero iff v is in the span).
  Vec reduce(const Vec& v) const;
  // Coefficients c with v = sum c_i vectors()[i]; requires coordinate tracking.
  std::optional<Vec> coordinates(const Vec& v) const;

 private:
  std::size_t dim_;
  bool track_;
  std::vector<Vec> inserted_;
  std::vector<Vec> rows_;
  std::vector<std::size_t> pivots_;
  std::vector<Vec> combos_;  // rows_[i] = sum_j combos_[i][j] * inserted_[j]
};

// Kernel of a linear map given by its images: coefficient vectors c with sum c_i images[i] = 0.
std::vector<Vec> relations(const std::vector<Vec>& images, std::size_t target_dim);

// Homogeneous linear system with sparse equations, eliminated as rows arrive.
class SparseSystem {
 public:
  using Row = std::vector<std::pair<std::size_t, Cyc>>;  // strictly increasing columns, nonzero values

  explicit SparseSystem(std::size_t unknowns) : n_(unknowns), pivot_row_(unknowns, npos) {}
  std::size_t unknowns() const { return n_; }
  std::size_t rank() const { return rows_.size(); }
  void add(Row row);
  std::vector<Vec> kernel() const;

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t n_;
  std::vector<Row> rows_;  // leading entry 1
  std::vector<std::size_t> pivot_row_;
};

}  // namespace loopmod
