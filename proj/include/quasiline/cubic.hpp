#pragma once

// Lines through a point of a cubic hypersurface in P^4, counted by a
// resultant, and the conic count e(X, Gamma) derived from it.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "quasiline/poly.hpp"
#include "quasiline/rng.hpp"

namespace quasiline {

class CubicError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotOnHypersurfaceError : public CubicError {
 public:
  NotOnHypersurfaceError() : CubicError("point does not lie on the hypersurface") {}
};

class SingularPointError : public CubicError {
 public:
  SingularPointError() : CubicError("point is singular on the hypersurface (q1 = 0)") {}
};

class DegenerateError : public CubicError {
 public:
  explicit DegenerateError(const std::string& why) : CubicError("degenerate line count: " + why) {}
};

class RetriesExhaustedError : public CubicError {
 public:
  explicit RetriesExhaustedError(std::size_t tries)
      : CubicError("no generic sample after " + std::to_string(tries) + " attempts") {}
};

/// f(p + t v) = t q1(v) + t^2 q2(v) + t^3 q3(v). The direction variables are
/// the coordinates other than fixed_coordinate, in increasing order.
struct LinePencilExpansion {
  MultiPoly q1, q2, q3;
  std::size_t fixed_coordinate = 0;
  RationalVector point;

  /// Full direction vector from reduced direction variables.
  RationalVector direction(const RationalVector& reduced) const {
    RationalVector v;
    std::size_t k = 0;
    for (std::size_t i = 0; i < point.size(); ++i) v.push_back(i == fixed_coordinate ? Rational(0) : reduced.at(k++));
    return v;
  }
};

inline LinePencilExpansion line_pencil_expansion(const MultiPoly& f, const RationalVector& p) {
  const std::size_t n = f.nvars();
  if (p.size() != n) throw DimensionMismatch("point has wrong number of coordinates");
  if (f.evaluate(p) != 0) throw NotOnHypersurfaceError();
  std::size_t fixed = n;
  for (std::size_t i = 0; i < n; ++i)
    if (p[i] != 0) {
      fixed = i;
      break;
    }
  if (fixed == n) throw std::invalid_argument("the zero vector is not a projective point");

  // ring: n-1 direction variables, then t
  const std::size_t m = n;
  const std::size_t t_var = n - 1;
  MultiPoly t = MultiPoly::variable(m, t_var);
  std::vector<MultiPoly> images;
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    MultiPoly x = MultiPoly::constant(m, p[i]);
    if (i != fixed) x += t * MultiPoly::variable(m, k++);
    images.push_back(x);
  }
  MultiPoly g = f.compose(images);
  if (!g.coefficient_of(t_var, 0).is_zero()) throw std::logic_error("constant term survived expansion");
  if (g.degree(t_var) > 3) throw std::invalid_argument("hypersurface has degree above 3");

  std::vector<std::size_t> drop_t(m);
  for (std::size_t i = 0; i < m; ++i) drop_t[i] = i < t_var ? i : m;  // t never occurs after coefficient_of
  auto part = [&](unsigned d) { return g.coefficient_of(t_var, d).remap(n - 1, drop_t); };
  return LinePencilExpansion{part(1), part(2), part(3), fixed, p};
}

struct LineCountReport {
  std::size_t count = 0;               // distinct lines certified
  std::size_t with_multiplicity = 0;   // resultant degree when leading terms survive
  bool generic = false;
  bool leading_ok = false;
  bool squarefree = false;
  int resultant_degree = -1;
  std::size_t eliminated_variable = 0;  // index among direction variables
  UniPoly resultant;                    // dehomogenized, lowest degree first
  MultiPoly conic, cubic;               // restrictions to the plane q1 = 0 in (y0, y1, y2)
};

/// Restricts q2, q3 to q1 = 0 and counts their common zeros in P^2 by the
/// resultant in y0 after setting y2 = 1.
inline LineCountReport count_lines_through_point(const MultiPoly& f, const RationalVector& p) {
  LinePencilExpansion ex = line_pencil_expansion(f, p);
  if (ex.q1.is_zero()) throw SingularPointError();
  const std::size_t d = ex.q1.nvars();
  if (d != 4) throw DimensionMismatch("line count expects a hypersurface in P^4");

  std::size_t j = d;
  for (std::size_t i = d; i-- > 0;) {
    Exponent e(d, 0);
    e[i] = 1;
    if (ex.q1.coefficient(e) != 0) {
      j = i;
      break;
    }
  }
  Exponent ej(d, 0);
  ej[j] = 1;
  const Rational cj = ex.q1.coefficient(ej);
  MultiPoly solved = (ex.q1 - MultiPoly::monomial(ej, cj)) * Rational(-1 / cj);
  std::vector<std::size_t> keep(d);
  for (std::size_t i = 0, k = 0; i < d; ++i) keep[i] = i == j ? d : k++;

  LineCountReport rep;
  rep.eliminated_variable = j;
  rep.conic = ex.q2.substitute(j, solved).remap(3, keep);
  rep.cubic = ex.q3.substitute(j, solved).remap(3, keep);
  if (rep.conic.is_zero() || rep.cubic.is_zero()) throw DegenerateError("a restricted form vanishes identically");

  rep.leading_ok = rep.conic.coefficient({2, 0, 0}) != 0 && rep.cubic.coefficient({3, 0, 0}) != 0;
  MultiPoly a = rep.conic.substitute(2, MultiPoly::constant(3, Rational(1)));
  MultiPoly b = rep.cubic.substitute(2, MultiPoly::constant(3, Rational(1)));
  if (a.degree(0) < 1 || b.degree(0) < 1) return rep;

  rep.resultant = to_univariate(sylvester_resultant(a, b, 0), 1);
  if (rep.resultant.empty()) throw DegenerateError("resultant vanishes identically");
  rep.resultant_degree = degree(rep.resultant);
  rep.squarefree = is_squarefree(rep.resultant);
  if (!rep.leading_ok) return rep;
  rep.with_multiplicity = static_cast<std::size_t>(rep.resultant_degree);
  rep.count = rep.with_multiplicity - static_cast<std::size_t>(
                                           degree(gcd_univariate(rep.resultant, uni_derivative(rep.resultant))));
  rep.generic = rep.resultant_degree == 6 && rep.squarefree;
  return rep;
}

/// Degree-3 monomials in n variables, lexicographically decreasing.
inline std::vector<Exponent> cubic_monomials(std::size_t n) {
  std::vector<Exponent> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      for (std::size_t k = j; k < n; ++k) {
        Exponent e(n, 0);
        ++e[i];
        ++e[j];
        ++e[k];
        out.push_back(e);
      }
  return out;
}

/// Random integer cubic in 5 variables through (1,0,0,0,0) and smooth there.
inline MultiPoly random_cubic_through_e0(SeededRng& rng, long long bound) {
  const Exponent x0cubed{3, 0, 0, 0, 0};
  for (;;) {
    MultiPoly f(5);
    for (const auto& e : cubic_monomials(5))
      if (e != x0cubed) f.add_term(e, Rational(rng.uniform(-bound, bound)));
    bool smooth = false;
    for (std::size_t i = 1; i < 5; ++i) {
      Exponent e{2, 0, 0, 0, 0};
      e[i] = 1;
      smooth = smooth || f.coefficient(e) != 0;
    }
    if (smooth) return f;
  }
}

struct ConicCertificate {
  std::uint64_t seed = 0;
  long long bound = 0;
  std::size_t attempts = 0;
  MultiPoly f;
  RationalVector point;
  LineCountReport report;
  // lines through a general point correspond to conics through two general points
  std::size_t e_conic() const { return report.count; }
};

/// Seeded random cubics through e0 until the line count is generic.
inline ConicCertificate e_conic_certificate(std::uint64_t seed, long long bound = 9, std::size_t retries = 20) {
  SeededRng rng(seed);
  const RationalVector p{1, 0, 0, 0, 0};
  for (std::size_t attempt = 1; attempt <= retries; ++attempt) {
    MultiPoly f = random_cubic_through_e0(rng, bound);
    try {
      LineCountReport rep = count_lines_through_point(f, p);
      if (rep.generic) return ConicCertificate{seed, bound, attempt, f, p, rep};
    } catch (const DegenerateError&) {
    }
  }
  throw RetriesExhaustedError(retries);
}

/// Moves from a known point of f to a seeded one: the third intersection of
/// a random tangent line through base.
inline ConicCertificate e_conic_certificate(const MultiPoly& f, const RationalVector& base, std::uint64_t seed,
                                            long long bound = 9, std::size_t retries = 20) {
  SeededRng rng(seed);
  LinePencilExpansion ex = line_pencil_expansion(f, base);
  if (ex.q1.is_zero()) throw SingularPointError();
  const std::size_t d = ex.q1.nvars();
  std::size_t j = d;
  for (std::size_t i = 0; i < d; ++i) {
    Exponent e(d, 0);
    e[i] = 1;
    if (ex.q1.coefficient(e) != 0) j = i;
  }
  Exponent ej(d, 0);
  ej[j] = 1;
  const Rational cj = ex.q1.coefficient(ej);
  for (std::size_t attempt = 1; attempt <= retries; ++attempt) {
    RationalVector v(d);
    for (std::size_t i = 0; i < d; ++i)
      if (i != j) v[i] = rng.uniform(-bound, bound);
    v[j] = 0;
    v[j] = -ex.q1.evaluate(v) / cj;
    const Rational a = ex.q2.evaluate(v), b = ex.q3.evaluate(v);
    if (a == 0 || b == 0) continue;
    RationalVector dir = ex.direction(v);
    RationalVector q = base;
    const Rational t = -a / b;
    for (std::size_t i = 0; i < q.size(); ++i) q[i] += t * dir[i];
    try {
      LineCountReport rep = count_lines_through_point(f, q);
      if (rep.generic) return ConicCertificate{seed, bound, attempt, f, q, rep};
    } catch (const CubicError&) {
    }
  }
  throw RetriesExhaustedError(retries);
}

}  // namespace quasiline
