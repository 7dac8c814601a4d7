#pragma once

#include "bewley/rational.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace bewley {

using Matrix = std::vector<Vector>;  // row-major

Vector zeros(std::size_t n);
Vector unit(std::size_t n, std::size_t i);

Rational dot(const Vector& a, const Vector& b);
Vector add(const Vector& a, const Vector& b);
Vector sub(const Vector& a, const Vector& b);
Vector scaled(const Vector& a, const Rational& s);
/// a += s * b
void axpy(Vector& a, const Rational& s, const Vector& b);
bool is_zero(const Vector& a);
Rational sum(const Vector& a);

/// Positive rescaling to a primitive integer vector (denominators cleared,
/// common factor removed). The zero vector is returned unchanged.
Vector primitive(const Vector& a);

/// Positive rescaling so the largest absolute entry equals one.
Vector max_normalized(const Vector& a);

/// Reduced row echelon form. When `pivot_from_right` is set, pivot columns are
/// chosen scanning from the last column backwards. Zero rows are dropped.
struct Echelon {
  Matrix rows;
  std::vector<std::size_t> pivots;  // pivot column of each row
};
Echelon rref(Matrix m, bool pivot_from_right = false);

std::size_t rank(const Matrix& m);

/// Basis of {x : m x = 0}; `cols` is needed when m has no rows.
Matrix nullspace(const Matrix& m, std::size_t cols);

/// Basis of the row space of m.
Matrix row_basis(const Matrix& m);

std::string format(const Vector& v);

void require_same_dim(const Vector& a, const Vector& b, const char* what);

}  // namespace bewley
