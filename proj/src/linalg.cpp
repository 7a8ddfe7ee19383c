#include "rsrepair/linalg.hpp"

#include <stdexcept>

namespace rsrepair {

std::vector<Elt> Matrix::row(int i) const {
  return std::vector<Elt>(a_.begin() + static_cast<std::ptrdiff_t>(i) * cols_,
                          a_.begin() + static_cast<std::ptrdiff_t>(i + 1) * cols_);
}

std::vector<Elt> Matrix::col(int j) const {
  std::vector<Elt> c(rows_);
  for (int i = 0; i < rows_; ++i) c[i] = at(i, j);
  return c;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

Matrix Matrix::columns(int first, int count) const {
  if (first < 0 || count < 0 || first + count > cols_) throw std::out_of_range("column range");
  Matrix out(rows_, count);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < count; ++j) out.at(i, j) = at(i, first + j);
  return out;
}

Matrix Matrix::hconcat(const Matrix& other) const {
  if (rows_ != other.rows_) throw std::invalid_argument("hconcat: row count mismatch");
  Matrix out(rows_, cols_ + other.cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) out.at(i, j) = at(i, j);
    for (int j = 0; j < other.cols_; ++j) out.at(i, cols_ + j) = other.at(i, j);
  }
  return out;
}

Matrix Matrix::identity(int n) {
  Matrix id(n, n);
  for (int i = 0; i < n; ++i) id.at(i, i) = Elt{1};
  return id;
}

Echelon row_reduce(const FieldCtx& f, Matrix a) {
  Echelon out;
  int row = 0;
  for (int col = 0; col < a.cols() && row < a.rows(); ++col) {
    int piv = -1;
    for (int i = row; i < a.rows(); ++i) {
      if (!a.at(i, col).is_zero()) {
        piv = i;
        break;
      }
    }
    if (piv < 0) continue;
    if (piv != row) {
      for (int j = 0; j < a.cols(); ++j) std::swap(a.at(piv, j), a.at(row, j));
    }
    const Elt inv = f.inv(a.at(row, col));
    for (int j = col; j < a.cols(); ++j) a.at(row, j) = f.mul(a.at(row, j), inv);
    for (int i = 0; i < a.rows(); ++i) {
      if (i == row) continue;
      const Elt c = a.at(i, col);
      if (c.is_zero()) continue;
      for (int j = col; j < a.cols(); ++j) {
        if (!a.at(row, j).is_zero()) a.at(i, j) = f.sub(a.at(i, j), f.mul(c, a.at(row, j)));
      }
    }
    out.pivots.push_back(col);
    ++row;
  }
  out.rref = std::move(a);
  return out;
}

int rank(const FieldCtx& f, const Matrix& a) {
  if (a.empty()) return 0;
  return row_reduce(f, a).rank();
}

std::vector<std::vector<Elt>> right_kernel(const FieldCtx& f, const Matrix& a) {
  const int n = a.cols();
  std::vector<std::vector<Elt>> basis;
  if (a.rows() == 0) {
    for (int j = 0; j < n; ++j) {
      std::vector<Elt> v(n);
      v[j] = f.one();
      basis.push_back(std::move(v));
    }
    return basis;
  }
  const Echelon e = row_reduce(f, a);
  std::vector<int> pivot_row(n, -1);
  for (int i = 0; i < e.rank(); ++i) pivot_row[e.pivots[i]] = i;
  for (int free = 0; free < n; ++free) {
    if (pivot_row[free] >= 0) continue;
    std::vector<Elt> v(n);
    v[free] = f.one();
    for (int i = 0; i < e.rank(); ++i) v[e.pivots[i]] = f.neg(e.rref.at(i, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<std::vector<Elt>> left_kernel(const FieldCtx& f, const Matrix& a) {
  return right_kernel(f, a.transpose());
}

std::optional<std::vector<Elt>> solve(const FieldCtx& f, const Matrix& a, const std::vector<Elt>& b) {
  if (static_cast<int>(b.size()) != a.rows()) throw std::invalid_argument("solve: dimension mismatch");
  Matrix aug(a.rows(), a.cols() + 1);
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, a.cols()) = b[i];
  }
  const Echelon e = row_reduce(f, std::move(aug));
  std::vector<Elt> x(a.cols());
  for (int i = 0; i < e.rank(); ++i) {
    if (e.pivots[i] == a.cols()) return std::nullopt;
    x[e.pivots[i]] = e.rref.at(i, a.cols());
  }
  return x;
}

std::optional<Matrix> inverse(const FieldCtx& f, const Matrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("inverse: matrix not square");
  const int n = a.rows();
  const Echelon e = row_reduce(f, a.hconcat(Matrix::identity(n)));
  if (e.rank() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
  return e.rref.columns(n, n);
}

Matrix multiply(const FieldCtx& f, const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("multiply: dimension mismatch");
  Matrix c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int k = 0; k < a.cols(); ++k) {
      const Elt x = a.at(i, k);
      if (x.is_zero()) continue;
      for (int j = 0; j < b.cols(); ++j) c.at(i, j) = f.add(c.at(i, j), f.mul(x, b.at(k, j)));
    }
  }
  return c;
}

std::vector<Elt> multiply(const FieldCtx& f, const Matrix& a, const std::vector<Elt>& x) {
  if (a.cols() != static_cast<int>(x.size())) throw std::invalid_argument("multiply: dimension mismatch");
  std::vector<Elt> y(a.rows());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) y[i] = f.add(y[i], f.mul(a.at(i, j), x[j]));
  return y;
}

}  // namespace rsrepair
