#pragma once

// Dense linear algebra over F_{q^m}.  Matrices whose entries all lie in F_q are
// handled by the same routines; elimination never leaves the subfield spanned
// by the entries, so ranks and kernels of F_q matrices come out over F_q.

#include <optional>
#include <vector>

#include "rsrepair/gfield.hpp"

namespace rsrepair {

class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Elt& at(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
  const Elt& at(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

  std::vector<Elt> row(int i) const;
  std::vector<Elt> col(int j) const;
  Matrix transpose() const;
  Matrix columns(int first, int count) const;
  Matrix hconcat(const Matrix& other) const;

  static Matrix identity(int n);

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Elt> a_;
};

struct Echelon {
  Matrix rref;              // reduced row echelon form, pivots normalised to 1
  std::vector<int> pivots;  // pivot column of each nonzero row
  int rank() const { return static_cast<int>(pivots.size()); }
};

Echelon row_reduce(const FieldCtx& f, Matrix a);
int rank(const FieldCtx& f, const Matrix& a);

// Basis of {x : a x = 0}, one vector per free column.
std::vector<std::vector<Elt>> right_kernel(const FieldCtx& f, const Matrix& a);
// Basis of {y : y a = 0}.
std::vector<std::vector<Elt>> left_kernel(const FieldCtx& f, const Matrix& a);

// Some x with a x = b (free variables set to zero), or nullopt.
std::optional<std::vector<Elt>> solve(const FieldCtx& f, const Matrix& a, const std::vector<Elt>& b);
std::optional<Matrix> inverse(const FieldCtx& f, const Matrix& a);

Matrix multiply(const FieldCtx& f, const Matrix& a, const Matrix& b);
std::vector<Elt> multiply(const FieldCtx& f, const Matrix& a, const std::vector<Elt>& x);

}  // namespace rsrepair
