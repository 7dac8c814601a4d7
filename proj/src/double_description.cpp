#include "bewley/errors.hpp"
#include "bewley/geometry.hpp"

#include <algorithm>

namespace bewley {

namespace {

std::vector<bool> tight_set(const Matrix& rows, const Vector& y) {
  std::vector<bool> z(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) z[i] = dot(rows[i], y).is_zero();
  return z;
}

void check_cap(std::size_t dim, std::size_t cap) {
  if (dim > cap) {
    throw CapExceeded("dimension " + std::to_string(dim) + " exceeds the facet-enumeration cap " +
                      std::to_string(cap));
  }
}

}  // namespace

ConeGenerators double_description(const Matrix& constraints, std::size_t dim) {
  ConeGenerators cone;
  for (std::size_t i = 0; i < dim; ++i) cone.lineality.push_back(unit(dim, i));
  Matrix processed;
  std::vector<std::vector<bool>> tight;  // tight sets of the current rays

  for (const Vector& a : constraints) {
    if (a.size() != dim) throw DimensionMismatch("double_description: constraint dimension");

    auto l = std::find_if(cone.lineality.begin(), cone.lineality.end(),
                          [&](const Vector& v) { return !dot(a, v).is_zero(); });
    if (l != cone.lineality.end()) {
      // The new row cuts the lineality space: one lineality direction becomes
      // a ray, everything else is projected onto a . y = 0 along it.
      Vector l0 = *l;
      cone.lineality.erase(l);
      Rational al0 = dot(a, l0);
      if (al0 < 0) {
        l0 = scaled(l0, -1);
        al0 = -al0;
      }
      for (auto& v : cone.lineality) axpy(v, -dot(a, v) / al0, l0);
      for (auto& r : cone.rays) {
        axpy(r, -dot(a, r) / al0, l0);
        r = primitive(r);
      }
      cone.rays.push_back(primitive(l0));
      processed.push_back(a);
      tight.clear();
      for (const auto& r : cone.rays) tight.push_back(tight_set(processed, r));
      continue;
    }

    std::vector<Rational> value;
    value.reserve(cone.rays.size());
    std::vector<std::size_t> pos, neg;
    std::vector<Vector> next;
    std::vector<std::vector<bool>> next_tight;
    for (std::size_t i = 0; i < cone.rays.size(); ++i) {
      value.push_back(dot(a, cone.rays[i]));
      if (value.back() > 0) pos.push_back(i);
      if (value.back() < 0) neg.push_back(i);
    }
    for (std::size_t i = 0; i < cone.rays.size(); ++i) {
      if (value[i] >= 0) {
        next.push_back(cone.rays[i]);
        next_tight.push_back(tight[i]);
        next_tight.back().push_back(value[i].is_zero());
      }
    }
    if (!neg.empty() && !pos.empty()) {
      // Algebraic adjacency test: two extreme rays span a 2-face iff the
      // constraints tight at both have rank (dim - lineality - 2).
      const std::size_t quotient = dim - cone.lineality.size();
      const std::size_t target = quotient >= 2 ? quotient - 2 : 0;
      for (std::size_t p : pos) {
        for (std::size_t q : neg) {
          Matrix common;
          for (std::size_t k = 0; k < processed.size(); ++k) {
            if (tight[p][k] && tight[q][k]) common.push_back(processed[k]);
          }
          if (common.size() < target) continue;
          if (rank(common) != target) continue;
          Vector r = scaled(cone.rays[q], value[p]);
          axpy(r, -value[q], cone.rays[p]);
          r = primitive(r);
          auto z = tight_set(processed, r);
          z.push_back(true);
          next.push_back(std::move(r));
          next_tight.push_back(std::move(z));
        }
      }
    }
    cone.rays = std::move(next);
    tight = std::move(next_tight);
    processed.push_back(a);
  }
  return cone;
}

HRep vrep_to_hrep(const Polytope& P, std::size_t dimension_cap) {
  const std::size_t m = P.dim();
  check_cap(m, dimension_cap);
  // Valid inequalities (b, -a) with b - a.v >= 0 on every vertex form a cone;
  // its lineality gives the affine hull, its extreme rays the facets.
  Matrix lifted;
  for (const auto& v : P.vertices()) {
    Vector row{Rational(1)};
    row.insert(row.end(), v.begin(), v.end());
    lifted.push_back(std::move(row));
  }
  ConeGenerators cone = double_description(lifted, m + 1);

  HRep H;
  H.dim = m;
  // Rows laid out as (bound, normal); pivoting from the right keeps pivots on
  // the normal coordinates, last coordinate first.
  Matrix eq_rows;
  for (const auto& l : cone.lineality) {
    Vector row{l[0]};
    for (std::size_t s = 0; s < m; ++s) row.push_back(-l[s + 1]);
    eq_rows.push_back(std::move(row));
  }
  Echelon eq = rref(eq_rows, /*pivot_from_right=*/true);
  for (const auto& row : eq.rows) {
    H.equalities.push_back({Vector(row.begin() + 1, row.end()), row[0]});
  }

  for (const auto& r : cone.rays) {
    const bool touches = std::any_of(lifted.begin(), lifted.end(),
                                     [&](const Vector& v) { return dot(v, r).is_zero(); });
    if (!touches) continue;
    Vector row{r[0]};
    for (std::size_t s = 0; s < m; ++s) row.push_back(-r[s + 1]);
    for (std::size_t k = 0; k < eq.rows.size(); ++k) {
      const Rational c = row[eq.pivots[k]];
      if (!c.is_zero()) axpy(row, -c, eq.rows[k]);
    }
    Vector normal(row.begin() + 1, row.end());
    if (is_zero(normal)) continue;
    auto lead = std::find_if(normal.begin(), normal.end(), [](const Rational& x) { return !x.is_zero(); });
    const Rational scale = 1 / Rational(abs(*lead));
    H.inequalities.push_back({scaled(normal, scale), row[0] * scale});
  }
  std::sort(H.inequalities.begin(), H.inequalities.end(), [](const HalfSpace& x, const HalfSpace& y) {
    return std::tie(x.normal, x.bound) < std::tie(y.normal, y.bound);
  });
  return H;
}

std::vector<Vector> hrep_vertices(const HRep& H, std::size_t dimension_cap) {
  const std::size_t m = H.dim;
  if (m == 0) throw PreconditionError("hrep_vertices: zero-dimensional ambient space");
  check_cap(m, dimension_cap);
  // Homogenize: (t, x) with t >= 0, b t - a.x >= 0, and b t - a.x = 0.
  Matrix rows;
  rows.push_back(unit(m + 1, 0));
  auto lifted = [m](const HalfSpace& h, bool flip) {
    if (h.normal.size() != m) throw DimensionMismatch("hrep_vertices: constraint dimension");
    Vector row{flip ? Rational(-h.bound) : h.bound};
    for (std::size_t s = 0; s < m; ++s) row.push_back(flip ? h.normal[s] : Rational(-h.normal[s]));
    return row;
  };
  for (const auto& h : H.equalities) {
    rows.push_back(lifted(h, false));
    rows.push_back(lifted(h, true));
  }
  for (const auto& h : H.inequalities) rows.push_back(lifted(h, false));

  ConeGenerators cone = double_description(rows, m + 1);
  if (!cone.lineality.empty()) throw PreconditionError("hrep_vertices: region contains a line");
  std::vector<Vector> vertices;
  for (const auto& r : cone.rays) {
    if (r[0].is_zero()) throw PreconditionError("hrep_vertices: region is unbounded");
    Vector x(r.begin() + 1, r.end());
    vertices.push_back(scaled(x, 1 / r[0]));
  }
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  return vertices;
}

}  // namespace bewley
