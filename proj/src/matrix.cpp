#include "rado/matrix.hpp"

#include <algorithm>
#include <sstream>

#include "rado/error.hpp"

namespace rado {

Matrix::Matrix(Ring r, int rows, int cols)
    : ring_(std::move(r)), rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0) fail(Err::MalformedInput, "negative matrix dimensions");
  data_.assign(rows, std::vector<Scalar>(cols, Scalar::zero(ring_)));
}

Matrix Matrix::from_rows(const Ring& r, std::vector<std::vector<Scalar>> rows) {
  int nr = static_cast<int>(rows.size());
  int nc = nr ? static_cast<int>(rows[0].size()) : 0;
  Matrix m(r, nr, nc);
  for (int i = 0; i < nr; ++i) {
    if (static_cast<int>(rows[i].size()) != nc)
      fail(Err::MalformedInput, "ragged matrix rows");
    for (int j = 0; j < nc; ++j) {
      if (rows[i][j].ring() != r) fail(Err::DimensionMismatch, "entry ring mismatch");
      m.data_[i][j] = std::move(rows[i][j]);
    }
  }
  return m;
}

Matrix Matrix::from_ints(const Ring& r, const std::vector<std::vector<long>>& rows) {
  int nr = static_cast<int>(rows.size());
  int nc = nr ? static_cast<int>(rows[0].size()) : 0;
  Matrix m(r, nr, nc);
  for (int i = 0; i < nr; ++i) {
    if (static_cast<int>(rows[i].size()) != nc)
      fail(Err::MalformedInput, "ragged matrix rows");
    for (int j = 0; j < nc; ++j) m.data_[i][j] = Scalar::from_int(r, rows[i][j]);
  }
  return m;
}

std::vector<Scalar> Matrix::col(int j) const {
  std::vector<Scalar> out;
  out.reserve(rows_);
  for (int i = 0; i < rows_; ++i) out.push_back(data_[i][j]);
  return out;
}

std::vector<Scalar> Matrix::col_sum(const std::vector<int>& cols) const {
  std::vector<Scalar> out(rows_, Scalar::zero(ring_));
  for (int j : cols)
    for (int i = 0; i < rows_; ++i) out[i] += data_[i][j];
  return out;
}

bool Matrix::operator==(const Matrix& o) const {
  return ring_ == o.ring_ && rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < rows_; ++i) {
    if (i) os << "; ";
    for (int j = 0; j < cols_; ++j) {
      if (j) os << " ";
      os << data_[i][j].to_string();
    }
  }
  os << "]";
  return os.str();
}

Matrix embed_matrix(const Matrix& m, const Ring& target) {
  Matrix out(target, m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out.at(i, j) = embed(m.at(i, j), target);
  return out;
}

RrefResult rref(const Matrix& m) {
  if (!m.ring().is_field())
    fail(Err::NonFieldDescriptor, "row reduction over " + m.ring().to_string());
  Matrix r = m;
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < r.cols() && row < r.rows(); ++col) {
    int piv = -1;
    for (int i = row; i < r.rows(); ++i)
      if (!r.at(i, col).is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != row)
      for (int j = 0; j < r.cols(); ++j) std::swap(r.at(piv, j), r.at(row, j));
    Scalar inv = r.at(row, col).inverse();
    for (int j = col; j < r.cols(); ++j) r.at(row, j) *= inv;
    for (int i = 0; i < r.rows(); ++i) {
      if (i == row || r.at(i, col).is_zero()) continue;
      Scalar f = r.at(i, col);
      for (int j = col; j < r.cols(); ++j) r.at(i, j) -= f * r.at(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return RrefResult{std::move(r), std::move(pivots)};
}

int rank(const Matrix& m) {
  if (m.ring().is_field()) return rref(m).rank();
  return rref(embed_matrix(m, m.ring().fraction_field())).rank();
}

std::optional<std::vector<Scalar>> solve_linear(const Matrix& A, const std::vector<Scalar>& b) {
  if (static_cast<int>(b.size()) != A.rows())
    fail(Err::DimensionMismatch, "solve_linear: rhs length");
  Matrix aug(A.ring(), A.rows(), A.cols() + 1);
  for (int i = 0; i < A.rows(); ++i) {
    for (int j = 0; j < A.cols(); ++j) aug.at(i, j) = A.at(i, j);
    aug.at(i, A.cols()) = b[i];
  }
  RrefResult r = rref(aug);
  std::vector<Scalar> x(A.cols(), Scalar::zero(A.ring()));
  for (size_t k = 0; k < r.pivot_cols.size(); ++k) {
    int pc = r.pivot_cols[k];
    if (pc == A.cols()) return std::nullopt;  // pivot in the rhs column
    x[pc] = r.reduced.at(static_cast<int>(k), A.cols());
  }
  return x;
}

std::vector<std::vector<Scalar>> kernel_basis(const Matrix& A) {
  RrefResult r = rref(A);
  std::vector<bool> is_pivot(A.cols(), false);
  for (int pc : r.pivot_cols) is_pivot[pc] = true;
  std::vector<std::vector<Scalar>> out;
  for (int fc = 0; fc < A.cols(); ++fc) {
    if (is_pivot[fc]) continue;
    std::vector<Scalar> v(A.cols(), Scalar::zero(A.ring()));
    v[fc] = Scalar::one(A.ring());
    for (size_t k = 0; k < r.pivot_cols.size(); ++k)
      v[r.pivot_cols[k]] = -r.reduced.at(static_cast<int>(k), fc);
    out.push_back(std::move(v));
  }
  return out;
}

Subspace::Subspace(Ring field, int ambient_dim) : field_(std::move(field)), dim_(ambient_dim) {
  if (!field_.is_field())
    fail(Err::NonFieldDescriptor, "subspace over " + field_.to_string());
}

std::vector<Scalar> Subspace::reduce(std::vector<Scalar> v) const {
  for (size_t k = 0; k < basis_.size(); ++k) {
    const Scalar& c = v[pivots_[k]];
    if (c.is_zero()) continue;
    Scalar f = c;
    for (int j = 0; j < dim_; ++j) v[j] -= f * basis_[k][j];
  }
  return v;
}

bool Subspace::contains(const std::vector<Scalar>& v) const {
  if (static_cast<int>(v.size()) != dim_) fail(Err::DimensionMismatch, "subspace vector length");
  std::vector<Scalar> r = reduce(v);
  for (const auto& c : r)
    if (!c.is_zero()) return false;
  return true;
}

bool Subspace::insert(const std::vector<Scalar>& v) {
  if (static_cast<int>(v.size()) != dim_) fail(Err::DimensionMismatch, "subspace vector length");
  std::vector<Scalar> r = reduce(v);
  int piv = -1;
  for (int j = 0; j < dim_; ++j)
    if (!r[j].is_zero()) {
      piv = j;
      break;
    }
  if (piv < 0) return false;
  Scalar inv = r[piv].inverse();
  for (int j = 0; j < dim_; ++j) r[j] *= inv;
  // Clear column piv in the existing rows, then keep rows sorted by pivot.
  for (size_t k = 0; k < basis_.size(); ++k) {
    const Scalar& c = basis_[k][piv];
    if (c.is_zero()) continue;
    Scalar f = c;
    for (int j = 0; j < dim_; ++j) basis_[k][j] -= f * r[j];
  }
  size_t pos = 0;
  while (pos < pivots_.size() && pivots_[pos] < piv) ++pos;
  basis_.insert(basis_.begin() + pos, std::move(r));
  pivots_.insert(pivots_.begin() + pos, piv);
  return true;
}

std::string Subspace::signature() const {
  std::ostringstream os;
  for (const auto& row : basis_) {
    for (const auto& c : row) os << c.to_string() << ",";
    os << ";";
  }
  return os.str();
}

uint64_t matrix_hash(const Matrix& m) {
  uint64_t h = 14695981039346656037ull;
  auto mix = [&](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ull;
    }
    h ^= '|';
    h *= 1099511628211ull;
  };
  mix(m.ring().to_string());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) mix(m.at(i, j).to_string());
  return h;
}

}  // namespace rado
