#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rado/scalar.hpp"

namespace rado {

// Dense ring-tagged matrix, row-major. All entries live in ring().
class Matrix {
 public:
  Matrix(Ring r, int rows, int cols);
  static Matrix from_rows(const Ring& r, std::vector<std::vector<Scalar>> rows);
  static Matrix from_ints(const Ring& r, const std::vector<std::vector<long>>& rows);

  const Ring& ring() const { return ring_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  const Scalar& at(int i, int j) const { return data_[i][j]; }
  Scalar& at(int i, int j) { return data_[i][j]; }
  const std::vector<Scalar>& row(int i) const { return data_[i]; }

  std::vector<Scalar> col(int j) const;
  // Entrywise sum of the columns named in `cols` (0-based).
  std::vector<Scalar> col_sum(const std::vector<int>& cols) const;

  bool operator==(const Matrix& o) const;
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  Ring ring_;
  int rows_;
  int cols_;
  std::vector<std::vector<Scalar>> data_;
};

// Entrywise canonical embedding into `target` (see embed()).
Matrix embed_matrix(const Matrix& m, const Ring& target);

// FNV-1a over the ring descriptor and canonical entry text; stable across
// runs, used to tie verdicts and certificates to their matrix.
uint64_t matrix_hash(const Matrix& m);

struct RrefResult {
  Matrix reduced;
  std::vector<int> pivot_cols;  // one per nonzero row, increasing
  int rank() const { return static_cast<int>(pivot_cols.size()); }
};

// Reduced row echelon form; requires a field descriptor (NonFieldDescriptor).
RrefResult rref(const Matrix& m);

int rank(const Matrix& m);

// Particular solution of A x = b over a field, with all free variables set
// to zero; nullopt when inconsistent.
std::optional<std::vector<Scalar>> solve_linear(const Matrix& A, const std::vector<Scalar>& b);

// Basis of { x : A x = 0 } over a field, one vector per free column.
std::vector<std::vector<Scalar>> kernel_basis(const Matrix& A);

// Row space over a field, kept as a reduced echelon basis so membership,
// incremental insertion and canonical signatures are cheap.
class Subspace {
 public:
  Subspace(Ring field, int ambient_dim);

  int ambient_dim() const { return dim_; }
  int rank() const { return static_cast<int>(basis_.size()); }
  const std::vector<std::vector<Scalar>>& basis() const { return basis_; }

  bool contains(const std::vector<Scalar>& v) const;
  // Adds v to the span; false when v was already contained.
  bool insert(const std::vector<Scalar>& v);

  // Canonical text form of the reduced basis, usable as a memo key.
  std::string signature() const;

 private:
  // Reduces v against basis_; returns the residue.
  std::vector<Scalar> reduce(std::vector<Scalar> v) const;

  Ring field_;
  int dim_;
  std::vector<std::vector<Scalar>> basis_;  // reduced echelon rows
  std::vector<int> pivots_;                 // pivot column of each row
};

}  // namespace rado
