#include "bewley/linalg.hpp"

#include "bewley/errors.hpp"

#include <algorithm>
#include <numeric>

namespace bewley {

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int, boost::multiprecision::et_off>;

void require_same_dim(const Vector& a, const Vector& b, const char* what) {
  if (a.size() != b.size()) {
    throw DimensionMismatch(std::string(what) + ": dimensions " + std::to_string(a.size()) +
                            " and " + std::to_string(b.size()) + " differ");
  }
}

Vector zeros(std::size_t n) { return Vector(n, Rational(0)); }

Vector unit(std::size_t n, std::size_t i) {
  Vector v = zeros(n);
  v.at(i) = 1;
  return v;
}

Rational dot(const Vector& a, const Vector& b) {
  require_same_dim(a, b, "dot");
  Rational r = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i].is_zero() && !b[i].is_zero()) r += a[i] * b[i];
  }
  return r;
}

Vector add(const Vector& a, const Vector& b) {
  require_same_dim(a, b, "add");
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Vector sub(const Vector& a, const Vector& b) {
  require_same_dim(a, b, "sub");
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Vector scaled(const Vector& a, const Rational& s) {
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * s;
  return r;
}

void axpy(Vector& a, const Rational& s, const Vector& b) {
  require_same_dim(a, b, "axpy");
  if (s.is_zero()) return;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!b[i].is_zero()) a[i] += s * b[i];
  }
}

bool is_zero(const Vector& a) {
  return std::all_of(a.begin(), a.end(), [](const Rational& x) { return x.is_zero(); });
}

Rational sum(const Vector& a) {
  Rational r = 0;
  for (const auto& x : a) r += x;
  return r;
}

Vector primitive(const Vector& a) {
  if (is_zero(a)) return a;
  Integer l = 1;
  for (const auto& x : a) l = boost::multiprecision::lcm(l, Integer(denominator(x)));
  Integer g = 0;
  std::vector<Integer> ints;
  ints.reserve(a.size());
  for (const auto& x : a) {
    Integer v = numerator(x) * (l / denominator(x));
    g = boost::multiprecision::gcd(g, v);
    ints.push_back(std::move(v));
  }
  if (g < 0) g = -g;
  Vector r;
  r.reserve(a.size());
  for (auto& v : ints) r.emplace_back(v / g);
  return r;
}

Vector max_normalized(const Vector& a) {
  Rational m = 0;
  for (const auto& x : a) m = std::max(m, Rational(abs(x)));
  if (m.is_zero()) return a;
  return scaled(a, 1 / m);
}

Echelon rref(Matrix m, bool pivot_from_right) {
  Echelon out;
  if (m.empty()) return out;
  const std::size_t cols = m.front().size();
  std::size_t row = 0;
  for (std::size_t k = 0; k < cols && row < m.size(); ++k) {
    const std::size_t c = pivot_from_right ? cols - 1 - k : k;
    std::size_t p = row;
    while (p < m.size() && m[p][c].is_zero()) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[row]);
    const Rational inv = 1 / m[row][c];
    for (auto& x : m[row]) x *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i != row && !m[i][c].is_zero()) {
        const Rational f = m[i][c];
        axpy(m[i], -f, m[row]);
      }
    }
    out.pivots.push_back(c);
    ++row;
  }
  m.resize(row);
  out.rows = std::move(m);
  return out;
}

std::size_t rank(const Matrix& m) { return rref(m).rows.size(); }

Matrix nullspace(const Matrix& m, std::size_t cols) {
  Echelon e = rref(m);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : e.pivots) is_pivot[c] = true;
  Matrix basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    Vector v = zeros(cols);
    v[free] = 1;
    for (std::size_t r = 0; r < e.rows.size(); ++r) v[e.pivots[r]] = -e.rows[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

Matrix row_basis(const Matrix& m) { return rref(m).rows; }

std::string format(const Vector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += to_string(v[i]);
  }
  return s + ")";
}

}  // namespace bewley
