#pragma once

// Toric divisors through their support functions: Cartier certificates,
// pullback along toric morphisms, the sections polyhedron and exact
// lattice-point counting for h^0.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "quasiline/fan.hpp"
#include "quasiline/lattice.hpp"
#include "quasiline/rng.hpp"

namespace quasiline {

class DivisorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnboundedError : public DivisorError {
 public:
  UnboundedError() : DivisorError("polyhedron is unbounded; lattice-point count is infinite") {}
};

class NotMorphismError : public DivisorError {
 public:
  NotMorphismError() : DivisorError("lattice map does not send cones into cones") {}
};

class NotCartierError : public DivisorError {
 public:
  NotCartierError() : DivisorError("support function is not piecewise integral-linear on the fan") {}
};

/// Integer value per ray; value(v_i) = psi_D(v_i) = -a_i for D = sum a_i D_i.
struct SupportFunction {
  Fan fan;
  IntVector values;

  SupportFunction(Fan f, IntVector v) : fan(std::move(f)), values(std::move(v)) {
    if (values.size() != fan.rays.size()) throw DivisorError("support function needs one value per ray");
  }
};

struct CartierCertificate {
  bool cartier = false;
  std::vector<IntVector> dual_vectors;  // one m_sigma per maximal cone, when cartier
  // failure witness
  std::optional<std::size_t> failing_cone;
  RationalVector rational_solution;
};

inline CartierCertificate is_cartier(const SupportFunction& psi) {
  CartierCertificate cert;
  const Fan& f = psi.fan;
  for (std::size_t c = 0; c < f.cones.size(); ++c) {
    const auto& cone = f.cones[c];
    IntMatrix A = matrix_from_vectors(f.generators(cone));
    IntVector b;
    for (auto i : cone) b.push_back(psi.values[i]);
    auto m = solve_integer_linear(A, b);
    if (!m) {
      cert.failing_cone = c;
      auto q = solve_rational_linear(A, b);
      if (q) cert.rational_solution = q->x;
      cert.dual_vectors.clear();
      return cert;
    }
    for (std::size_t k = 0; k < cone.size(); ++k)
      if (dot(*m, f.rays[cone[k]]) != b[k]) throw LatticeError("cartier certificate does not reproduce values");
    cert.dual_vectors.push_back(std::move(*m));
  }
  cert.cartier = true;
  return cert;
}

/// Support function on src given by psi o h.
inline SupportFunction pullback(const SupportFunction& psi, const LatticeHom& h, const Fan& src) {
  if (!is_toric_morphism(h, src, psi.fan)) throw NotMorphismError();
  CartierCertificate cert = is_cartier(psi);
  if (!cert.cartier) throw NotCartierError();
  auto targets = cone_geometries(psi.fan);
  IntVector values;
  for (const auto& w : src.rays) {
    IntVector hw = h(w);
    auto c = find_containing_cone(targets, hw);
    if (!c) throw NotMorphismError();
    values.push_back(dot(cert.dual_vectors[*c], hw));
  }
  return SupportFunction(src, std::move(values));
}

// ---------------------------------------------------------------------------
// Sections polyhedron

struct HalfSpace {
  IntVector normal;  // <u, normal> >= rhs
  Integer rhs;

  friend bool operator==(const HalfSpace&, const HalfSpace&) = default;
};

struct SectionsPolyhedron {
  std::size_t dim = 0;
  std::vector<HalfSpace> constraints;

  bool contains(const IntVector& u) const {
    return std::all_of(constraints.begin(), constraints.end(),
                       [&](const HalfSpace& h) { return dot(u, h.normal) >= h.rhs; });
  }

  /// Every constraint of other also appears here, so this polyhedron is a subset.
  bool has_all_constraints_of(const SectionsPolyhedron& other) const {
    return std::all_of(other.constraints.begin(), other.constraints.end(), [&](const HalfSpace& h) {
      return std::find(constraints.begin(), constraints.end(), h) != constraints.end();
    });
  }
};

inline SectionsPolyhedron sections_polyhedron(const SupportFunction& psi) {
  SectionsPolyhedron p;
  p.dim = psi.fan.dim;
  for (std::size_t i = 0; i < psi.fan.rays.size(); ++i) p.constraints.push_back({psi.fan.rays[i], psi.values[i]});
  return p;
}

/// Recession cone {u : <u, normal_i> >= 0} is {0}.
inline bool is_bounded(const SectionsPolyhedron& p) {
  if (p.dim == 0) return true;
  if (p.constraints.empty()) return false;
  std::vector<IntVector> normals;
  for (const auto& h : p.constraints) normals.push_back(h.normal);
  if (rank(matrix_from_vectors(normals)) < p.dim) return false;
  std::vector<RationalVector> ineqs;
  for (const auto& n : normals) ineqs.push_back(to_rational(n));
  return extreme_rays(ineqs, {}, p.dim).empty();
}

/// Vertices from all dim-sized subsets of tight constraints.
inline std::vector<RationalVector> vertices(const SectionsPolyhedron& p) {
  std::set<RationalVector> found;
  detail::for_each_subset(p.constraints.size(), p.dim, [&](const std::vector<std::size_t>& subset) {
    IntMatrix A(p.dim, p.dim);
    IntVector b(p.dim);
    for (std::size_t r = 0; r < p.dim; ++r) {
      for (std::size_t c = 0; c < p.dim; ++c) A(r, c) = p.constraints[subset[r]].normal[c];
      b[r] = p.constraints[subset[r]].rhs;
    }
    auto sol = solve_rational_linear(A, b);
    if (!sol || !sol->unique) return;
    bool feasible = std::all_of(p.constraints.begin(), p.constraints.end(),
                                [&](const HalfSpace& h) { return dot(sol->x, h.normal) >= Rational(h.rhs); });
    if (feasible) found.insert(sol->x);
  });
  return {found.begin(), found.end()};
}

struct LatticePointCount {
  Integer count = 0;
  std::vector<IntVector> points;  // lexicographic order
};

namespace detail {

inline bool fits_small(const Integer& x) { return abs(x) < (Integer(1) << 20); }

/// Visits every integer point of the box [lo, hi] in lexicographic order.
template <class T, class Visit>
void scan_box(const std::vector<T>& lo, const std::vector<T>& hi, Visit&& visit) {
  const std::size_t d = lo.size();
  for (std::size_t i = 0; i < d; ++i)
    if (lo[i] > hi[i]) return;
  std::vector<T> u = lo;
  for (;;) {
    visit(u);
    std::size_t i = d;
    while (i > 0 && u[i - 1] == hi[i - 1]) {
      u[i - 1] = lo[i - 1];
      --i;
    }
    if (i == 0) return;
    ++u[i - 1];
  }
}

}  // namespace detail

/// Exact count of integer points. Throws UnboundedError when the recession
/// cone is nontrivial.
inline LatticePointCount count_lattice_points(const SectionsPolyhedron& p) {
  if (!is_bounded(p)) throw UnboundedError();
  LatticePointCount out;
  auto verts = vertices(p);
  if (verts.empty()) return out;
  std::vector<Integer> lo(p.dim), hi(p.dim);
  for (std::size_t i = 0; i < p.dim; ++i) {
    Rational mn = verts.front()[i], mx = verts.front()[i];
    for (const auto& v : verts) {
      mn = std::min(mn, v[i]);
      mx = std::max(mx, v[i]);
    }
    lo[i] = ceil_of(mn);
    hi[i] = floor_of(mx);
  }

  bool small = p.dim <= 16 && std::all_of(lo.begin(), lo.end(), detail::fits_small) &&
               std::all_of(hi.begin(), hi.end(), detail::fits_small);
  for (const auto& h : p.constraints) {
    small = small && detail::fits_small(h.rhs);
    for (const auto& x : h.normal) small = small && detail::fits_small(x);
  }
  if (small) {
    // 64-bit fast path: every |normal| * |u| * dim stays far below 2^63
    std::vector<std::vector<std::int64_t>> normals;
    std::vector<std::int64_t> rhs;
    for (const auto& h : p.constraints) {
      std::vector<std::int64_t> n;
      for (const auto& x : h.normal) n.push_back(x.convert_to<std::int64_t>());
      normals.push_back(std::move(n));
      rhs.push_back(h.rhs.convert_to<std::int64_t>());
    }
    std::vector<std::int64_t> l, hh;
    for (std::size_t i = 0; i < p.dim; ++i) {
      l.push_back(lo[i].convert_to<std::int64_t>());
      hh.push_back(hi[i].convert_to<std::int64_t>());
    }
    detail::scan_box(l, hh, [&](const std::vector<std::int64_t>& u) {
      for (std::size_t k = 0; k < normals.size(); ++k) {
        std::int64_t s = 0;
        for (std::size_t j = 0; j < p.dim; ++j) s += normals[k][j] * u[j];
        if (s < rhs[k]) return;
      }
      out.points.emplace_back(u.begin(), u.end());
    });
  } else {
    detail::scan_box(lo, hi, [&](const IntVector& u) {
      if (p.contains(u)) out.points.push_back(u);
    });
  }
  out.count = out.points.size();
  return out;
}

inline Integer h0(const SupportFunction& psi) { return count_lattice_points(sections_polyhedron(psi)).count; }

// ---------------------------------------------------------------------------
// The quotient example

/// Values psi(v_j) = -delta_{2j} (1-based j): the hyperplane of P^n read on
/// the rays v_1, ..., v_{n+1}.
inline IntVector appendix_hyperplane_values(long long n) {
  if (n < 2) throw BadDimensionError("quotient example needs n >= 2");
  IntVector v(static_cast<std::size_t>(n) + 1, Integer(0));
  v[1] = -1;
  return v;
}

struct LemmaA2Report {
  std::size_t base_rays = 0;
  std::size_t refined_rays = 0;
  std::size_t refined_cones = 0;
  bool refined_smooth = false;
  std::uint64_t seed = 0;
  long long coeff_bound = 0;
  std::size_t samples_requested = 0;
  std::size_t cartier_extensions = 0;  // passed the Cartier filter and were checked
  std::size_t rejected_not_cartier = 0;
  std::map<std::string, std::size_t> count_histogram;  // lattice-point count -> occurrences
  std::vector<std::string> violations;
  std::string banner =
      "finitely many sampled extensions: evidence for the universally quantified statement, not a proof";

  bool ok() const { return violations.empty(); }
};

/// Samples piecewise integral-linear extensions of base_values from the rays
/// of base to desingularize(base), with the values on new rays drawn from
/// [-coeff_bound, coeff_bound]. Each Cartier extension must have a sections
/// polyhedron inside the base one and at most one lattice point.
inline LemmaA2Report lemma_a2_sample_check(const Fan& base, const IntVector& base_values, long long coeff_bound,
                                           std::size_t samples, std::uint64_t seed) {
  LemmaA2Report rep;
  rep.seed = seed;
  rep.coeff_bound = coeff_bound;
  rep.samples_requested = samples;
  rep.base_rays = base.rays.size();

  const Fan refined = desingularize(base);
  rep.refined_rays = refined.rays.size();
  rep.refined_cones = refined.cones.size();
  rep.refined_smooth = is_smooth(refined);
  for (std::size_t i = 0; i < base.rays.size(); ++i)
    if (refined.rays[i] != base.rays[i]) rep.violations.push_back("desingularization moved an original ray");

  const SectionsPolyhedron base_poly = sections_polyhedron(SupportFunction(base, base_values));
  SeededRng rng(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    IntVector values = base_values;
    for (std::size_t i = base.rays.size(); i < refined.rays.size(); ++i)
      values.emplace_back(rng.uniform(-coeff_bound, coeff_bound));
    SupportFunction ext(refined, values);
    if (!is_cartier(ext).cartier) {
      ++rep.rejected_not_cartier;
      continue;
    }
    ++rep.cartier_extensions;
    SectionsPolyhedron poly = sections_polyhedron(ext);
    if (!poly.has_all_constraints_of(base_poly))
      rep.violations.push_back("sample " + std::to_string(s) + ": extension polyhedron not inside base polyhedron");
    try {
      Integer count = count_lattice_points(poly).count;
      ++rep.count_histogram[count.str()];
      if (count > 1) rep.violations.push_back("sample " + std::to_string(s) + ": " + count.str() + " sections");
    } catch (const UnboundedError&) {
      rep.violations.push_back("sample " + std::to_string(s) + ": unbounded sections polyhedron");
    }
  }
  return rep;
}

inline LemmaA2Report lemma_a2_sample_check(long long n, long long coeff_bound, std::size_t samples,
                                           std::uint64_t seed) {
  AppendixFans fans = build_appendix_fans(n);
  return lemma_a2_sample_check(fans.fan_n, appendix_hyperplane_values(n), coeff_bound, samples, seed);
}

}  // namespace quasiline
