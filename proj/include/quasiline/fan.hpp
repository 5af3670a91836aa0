#pragma once

// Simplicial fans in Z^d: validation, multiplicities, stellar subdivision,
// toric desingularization and toric morphisms given by lattice maps.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "quasiline/lattice.hpp"

namespace quasiline {

class FanError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotMaximalError : public FanError {
 public:
  using FanError::FanError;
};

class OutsideSupportError : public FanError {
 public:
  using FanError::FanError;
};

class BadDimensionError : public FanError {
 public:
  using FanError::FanError;
};

class NotSimplicialError : public FanError {
 public:
  using FanError::FanError;
};

/// Rays are primitive generators; cones are sorted index sets into rays.
struct Fan {
  std::size_t dim = 0;
  std::vector<IntVector> rays;
  std::vector<std::vector<std::size_t>> cones;

  std::vector<IntVector> generators(const std::vector<std::size_t>& cone) const {
    std::vector<IntVector> g;
    g.reserve(cone.size());
    for (auto i : cone) g.push_back(rays.at(i));
    return g;
  }

  friend bool operator==(const Fan&, const Fan&) = default;
};

struct Cone {
  std::vector<std::size_t> rays;
};

/// Lattice homomorphism N1 -> N2; matrix is dim(N2) x dim(N1).
struct LatticeHom {
  IntMatrix matrix;

  std::size_t source_dim() const { return matrix.cols(); }
  std::size_t target_dim() const { return matrix.rows(); }
  IntVector operator()(const IntVector& v) const { return matrix * v; }
};

/// Geometry of one simplicial cone: coordinates of a point with respect to
/// the generators, completed by standard basis vectors to a basis of Q^d.
class SimplicialCone {
 public:
  SimplicialCone(std::vector<IntVector> generators, std::size_t dim) : gens_(std::move(generators)), dim_(dim) {
    std::vector<IntVector> basis = gens_;
    for (const auto& g : gens_)
      if (g.size() != dim_) throw DimensionMismatch("cone generator has wrong dimension");
    if (rank(matrix_from_vectors_or_empty(basis)) != gens_.size())
      throw NotSimplicialError("cone generators are linearly dependent");
    for (std::size_t j = 0; j < dim_ && basis.size() < dim_; ++j) {
      IntVector e(dim_);
      e[j] = 1;
      basis.push_back(e);
      if (rank(matrix_from_vectors(basis)) != basis.size()) basis.pop_back();
    }
    // columns of B are the basis vectors; coordinates are B^-1 x
    to_coords_ = inverse(to_rational(matrix_from_vectors(basis).transpose()));
  }

  std::size_t size() const { return gens_.size(); }
  std::size_t dim() const { return dim_; }
  const std::vector<IntVector>& generators() const { return gens_; }

  /// Coefficients of x in terms of the generators, or nullopt when x is
  /// outside their span.
  std::optional<RationalVector> coordinates(const RationalVector& x) const {
    if (dim_ == 0) return RationalVector{};
    RationalVector all = to_coords_ * x;
    for (std::size_t i = gens_.size(); i < dim_; ++i)
      if (all[i] != 0) return std::nullopt;
    all.resize(gens_.size());
    return all;
  }

  std::optional<RationalVector> coordinates(const IntVector& x) const { return coordinates(to_rational(x)); }

  template <class Vec>
  bool contains(const Vec& x) const {
    auto c = coordinates(x);
    return c && std::all_of(c->begin(), c->end(), [](const Rational& q) { return q >= 0; });
  }

  /// Rows r with r.x >= 0 on the cone (facet normals).
  std::vector<RationalVector> inequalities() const {
    std::vector<RationalVector> out;
    for (std::size_t i = 0; i < gens_.size(); ++i) out.push_back(to_coords_.row(i));
    return out;
  }

  /// Rows r with r.x == 0 on the linear span.
  std::vector<RationalVector> equalities() const {
    std::vector<RationalVector> out;
    for (std::size_t i = gens_.size(); i < dim_; ++i) out.push_back(to_coords_.row(i));
    return out;
  }

 private:
  static IntMatrix matrix_from_vectors_or_empty(const std::vector<IntVector>& v) {
    return v.empty() ? IntMatrix() : matrix_from_vectors(v);
  }

  std::vector<IntVector> gens_;
  std::size_t dim_;
  RationalMatrix to_coords_;
};

inline std::vector<SimplicialCone> cone_geometries(const Fan& f) {
  std::vector<SimplicialCone> out;
  out.reserve(f.cones.size());
  for (const auto& c : f.cones) out.emplace_back(f.generators(c), f.dim);
  return out;
}

inline std::optional<std::size_t> find_containing_cone(const std::vector<SimplicialCone>& cones, const IntVector& x) {
  for (std::size_t i = 0; i < cones.size(); ++i)
    if (cones[i].contains(x)) return i;
  return std::nullopt;
}

namespace detail {

template <class F>
void for_each_subset(std::size_t n, std::size_t k, F&& visit) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    visit(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

inline RationalMatrix stack(const std::vector<RationalVector>& rows, std::size_t dim) {
  RationalMatrix m(rows.size(), dim);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < dim; ++c) m(r, c) = rows[r][c];
  return m;
}

}  // namespace detail

/// Extreme rays of the pointed cone {x : E x = 0, I x >= 0}, by exhaustive
/// search over tight constraint subsets. Returns primitive integer vectors.
inline std::vector<IntVector> extreme_rays(const std::vector<RationalVector>& ineqs,
                                           const std::vector<RationalVector>& eqs, std::size_t dim) {
  std::set<IntVector> found;
  const std::size_t e = eqs.empty() ? 0 : rank(detail::stack(eqs, dim));
  if (e + 1 > dim) return {};
  const std::size_t k = dim - 1 - e;
  detail::for_each_subset(ineqs.size(), k, [&](const std::vector<std::size_t>& subset) {
    std::vector<RationalVector> rows = eqs;
    for (auto i : subset) rows.push_back(ineqs[i]);
    auto ns = rows.empty() ? std::vector<RationalVector>{} : nullspace(detail::stack(rows, dim));
    if (rows.empty()) {
      if (dim != 1) return;
      ns = {RationalVector{Rational(1)}};
    }
    if (ns.size() != 1) return;
    for (int sign : {1, -1}) {
      RationalVector r = ns.front();
      for (auto& x : r) x *= sign;
      bool ok = std::all_of(ineqs.begin(), ineqs.end(), [&](const RationalVector& row) { return dot(row, r) >= 0; });
      if (ok) found.insert(primitive_integer_multiple(r));
    }
  });
  return {found.begin(), found.end()};
}

// ---------------------------------------------------------------------------
// Validation

enum class FanViolation {
  WrongDimension,
  ZeroRay,
  NonPrimitiveRay,
  DuplicateRay,
  EmptyCone,
  IndexOutOfRange,
  NonSimplicialCone,
  FaceCondition,
  UnusedRay,
};

inline const char* to_string(FanViolation v) {
  switch (v) {
    case FanViolation::WrongDimension: return "wrong-dimension";
    case FanViolation::ZeroRay: return "zero-ray";
    case FanViolation::NonPrimitiveRay: return "non-primitive-ray";
    case FanViolation::DuplicateRay: return "duplicate-ray";
    case FanViolation::EmptyCone: return "empty-cone";
    case FanViolation::IndexOutOfRange: return "index-out-of-range";
    case FanViolation::NonSimplicialCone: return "non-simplicial-cone";
    case FanViolation::FaceCondition: return "face-condition";
    case FanViolation::UnusedRay: return "unused-ray";
  }
  return "unknown";
}

struct ValidationReport {
  struct Entry {
    FanViolation kind;
    std::string detail;
  };
  std::vector<Entry> violations;

  bool valid() const { return violations.empty(); }
  bool has(FanViolation kind) const {
    return std::any_of(violations.begin(), violations.end(), [&](const Entry& e) { return e.kind == kind; });
  }
};

/// True when the intersection of two simplicial cones is the cone on their
/// common generators (hence a face of both).
inline bool meet_in_common_face(const SimplicialCone& a, const SimplicialCone& b,
                                const std::vector<IntVector>& common) {
  // full-dimensional cones sharing a facet: the two opposite generators must
  // lie strictly on opposite sides of the facet's span
  if (a.size() == a.dim() && b.size() == b.dim() && common.size() + 1 == a.dim()) {
    auto opposite = [&](const SimplicialCone& c) -> std::size_t {
      for (std::size_t i = 0; i < c.size(); ++i)
        if (std::find(common.begin(), common.end(), c.generators()[i]) == common.end()) return i;
      return c.size();
    };
    const std::size_t ia = opposite(a), ib = opposite(b);
    if (ia < a.size() && ib < b.size()) {
      auto coords = a.coordinates(b.generators()[ib]);
      return coords && (*coords)[ia] < 0;
    }
  }
  std::vector<RationalVector> ineqs = a.inequalities();
  for (auto& r : b.inequalities()) ineqs.push_back(std::move(r));
  std::vector<RationalVector> eqs = a.equalities();
  for (auto& r : b.equalities()) eqs.push_back(std::move(r));
  auto rays = extreme_rays(ineqs, eqs, a.dim());
  if (common.empty()) return rays.empty();
  SimplicialCone face(common, a.dim());
  return std::all_of(rays.begin(), rays.end(), [&](const IntVector& r) { return face.contains(r); });
}

inline ValidationReport validate_fan(const Fan& f) {
  ValidationReport rep;
  auto add = [&](FanViolation k, std::string d) { rep.violations.push_back({k, std::move(d)}); };

  bool rays_ok = true;
  for (std::size_t i = 0; i < f.rays.size(); ++i) {
    const auto& r = f.rays[i];
    if (r.size() != f.dim) {
      add(FanViolation::WrongDimension, "ray " + std::to_string(i) + " has length " + std::to_string(r.size()));
      rays_ok = false;
    } else if (is_zero(r)) {
      add(FanViolation::ZeroRay, "ray " + std::to_string(i) + " is zero");
      rays_ok = false;
    } else if (!is_primitive(r)) {
      add(FanViolation::NonPrimitiveRay, "ray " + std::to_string(i) + " " + to_string(r) + " is not primitive");
    }
    for (std::size_t j = 0; j < i; ++j)
      if (f.rays[j] == r) add(FanViolation::DuplicateRay, "rays " + std::to_string(j) + " and " + std::to_string(i));
  }

  std::vector<bool> used(f.rays.size(), false);
  std::vector<std::optional<SimplicialCone>> geo(f.cones.size());
  for (std::size_t c = 0; c < f.cones.size(); ++c) {
    const auto& cone = f.cones[c];
    if (cone.empty()) {
      add(FanViolation::EmptyCone, "cone " + std::to_string(c) + " is empty");
      continue;
    }
    bool idx_ok = true;
    for (auto i : cone) {
      if (i >= f.rays.size()) {
        add(FanViolation::IndexOutOfRange, "cone " + std::to_string(c) + " references ray " + std::to_string(i));
        idx_ok = false;
      } else {
        used[i] = true;
      }
    }
    if (!idx_ok || !rays_ok) continue;
    std::set<std::size_t> uniq(cone.begin(), cone.end());
    if (uniq.size() != cone.size()) {
      add(FanViolation::NonSimplicialCone, "cone " + std::to_string(c) + " repeats a ray");
      continue;
    }
    try {
      geo[c].emplace(f.generators(cone), f.dim);
    } catch (const NotSimplicialError&) {
      add(FanViolation::NonSimplicialCone, "cone " + std::to_string(c) + " has dependent generators");
    }
  }
  for (std::size_t i = 0; i < used.size(); ++i)
    if (!used[i]) add(FanViolation::UnusedRay, "ray " + std::to_string(i) + " is in no cone");

  for (std::size_t a = 0; a < f.cones.size(); ++a)
    for (std::size_t b = a + 1; b < f.cones.size(); ++b) {
      if (!geo[a] || !geo[b]) continue;
      std::vector<std::size_t> ca = f.cones[a], cb = f.cones[b], common;
      std::sort(ca.begin(), ca.end());
      std::sort(cb.begin(), cb.end());
      std::set_intersection(ca.begin(), ca.end(), cb.begin(), cb.end(), std::back_inserter(common));
      if (!meet_in_common_face(*geo[a], *geo[b], f.generators(common)))
        add(FanViolation::FaceCondition,
            "cones " + std::to_string(a) + " and " + std::to_string(b) + " do not meet in a common face");
    }
  return rep;
}

// ---------------------------------------------------------------------------
// Multiplicities and smoothness

/// Index of the lattice spanned by the generators inside its saturation.
inline Integer cone_index(const Fan& f, const std::vector<std::size_t>& cone) {
  if (cone.empty()) return 1;
  return saturation_index(matrix_from_vectors(f.generators(cone)));
}

/// Multiplicity of a full-dimensional simplicial cone; 1 means the affine
/// chart is smooth.
inline Integer cone_multiplicity(const Fan& f, const Cone& c) {
  if (c.rays.size() != f.dim) throw NotMaximalError("cone is not full-dimensional");
  auto idx = sublattice_index(matrix_from_vectors(f.generators(c.rays)));
  if (!idx) throw NotMaximalError("cone generators are linearly dependent");
  return *idx;
}

inline bool is_smooth(const Fan& f) {
  return std::all_of(f.cones.begin(), f.cones.end(), [&](const auto& c) { return cone_index(f, c) == 1; });
}

// ---------------------------------------------------------------------------
// Box points and subdivision

struct BoxPoint {
  IntVector point;
  RationalVector coefficients;  // in [0,1), with respect to the cone generators
};

/// Nonzero lattice points sum(l_i v_i) with 0 <= l_i < 1. There are
/// (index - 1) of them.
inline std::vector<BoxPoint> box_points(const std::vector<IntVector>& gens, std::size_t dim) {
  std::vector<BoxPoint> out;
  if (gens.empty()) return out;
  SimplicialCone geo(gens, dim);
  SmithForm snf = smith_normal_form(matrix_from_vectors(gens));
  RationalMatrix vinv = inverse(to_rational(snf.V));
  const std::size_t r = gens.size();
  std::vector<Integer> s = snf.diagonal();
  std::vector<Integer> c(r, 0);
  std::set<IntVector> seen;
  for (;;) {
    RationalVector y(dim);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < dim; ++j) y[j] += Rational(c[i]) * vinv(i, j);
    auto lambda = geo.coordinates(y);
    if (!lambda) throw LatticeError("box point outside cone span");
    BoxPoint bp;
    bp.point.assign(dim, Integer(0));
    for (std::size_t i = 0; i < r; ++i) {
      Rational frac = (*lambda)[i] - Rational(floor_of((*lambda)[i]));
      bp.coefficients.push_back(frac);
    }
    RationalVector acc(dim);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < dim; ++j) acc[j] += bp.coefficients[i] * gens[i][j];
    for (std::size_t j = 0; j < dim; ++j) {
      if (!is_integral(acc[j])) throw LatticeError("box point is not integral");
      bp.point[j] = boost::multiprecision::numerator(acc[j]);
    }
    if (!is_zero(bp.point) && seen.insert(bp.point).second) out.push_back(std::move(bp));

    std::size_t i = 0;
    while (i < r) {
      if (++c[i] < s[i]) break;
      c[i] = 0;
      ++i;
    }
    if (i == r) break;
  }
  return out;
}

/// Stellar subdivision at a primitive w in the support: every cone
/// containing w is replaced by the joins of w with its faces not containing w.
inline Fan stellar_subdivide(const Fan& f, const IntVector& w) {
  if (w.size() != f.dim) throw DimensionMismatch("subdivision point has wrong dimension");
  if (!is_primitive(w)) throw FanError("subdivision point must be primitive");
  if (std::find(f.rays.begin(), f.rays.end(), w) != f.rays.end()) return f;

  Fan out;
  out.dim = f.dim;
  out.rays = f.rays;
  const std::size_t w_index = out.rays.size();
  bool hit = false;
  for (const auto& cone : f.cones) {
    SimplicialCone geo(f.generators(cone), f.dim);
    auto lambda = geo.coordinates(w);
    bool inside = lambda && std::all_of(lambda->begin(), lambda->end(), [](const Rational& q) { return q >= 0; });
    if (!inside) {
      out.cones.push_back(cone);
      continue;
    }
    hit = true;
    for (std::size_t i = 0; i < cone.size(); ++i) {
      if ((*lambda)[i] == 0) continue;
      std::vector<std::size_t> child = cone;
      child[i] = w_index;
      std::sort(child.begin(), child.end());
      out.cones.push_back(std::move(child));
    }
  }
  if (!hit) throw OutsideSupportError("point " + to_string(w) + " lies in no cone of the fan");
  out.rays.push_back(w);
  return out;
}

/// Largest multiplicity among the cones created by subdividing at w.
inline Integer max_child_index(const Fan& before, const Fan& after) {
  Integer worst = 0;
  const std::size_t w_index = before.rays.size();
  for (const auto& c : after.cones)
    if (std::find(c.begin(), c.end(), w_index) != c.end()) worst = std::max(worst, cone_index(after, c));
  return worst;
}

/// Smooth refinement with the same support. Repeatedly takes the cone of
/// largest multiplicity and subdivides at the box point that minimizes the
/// largest resulting child multiplicity (ties: lexicographically smallest
/// point). Original rays keep their indices.
inline Fan desingularize(const Fan& f) {
  Fan cur = f;
  for (;;) {
    std::optional<std::size_t> worst;
    Integer worst_index = 1;
    for (std::size_t c = 0; c < cur.cones.size(); ++c) {
      Integer idx = cone_index(cur, cur.cones[c]);
      if (idx > worst_index) {
        worst_index = idx;
        worst = c;
      }
    }
    if (!worst) return cur;

    std::set<IntVector> candidates;
    for (const auto& bp : box_points(cur.generators(cur.cones[*worst]), cur.dim))
      candidates.insert(primitive(bp.point));

    std::optional<Fan> best;
    Integer best_score = 0;
    for (const auto& w : candidates) {  // std::set iterates lexicographically
      Fan next = stellar_subdivide(cur, w);
      Integer score = max_child_index(cur, next);
      if (!best || score < best_score) {
        best = std::move(next);
        best_score = score;
      }
    }
    if (!best || best_score >= worst_index) throw LatticeError("desingularization made no progress");
    cur = std::move(*best);
  }
}

/// True when every cone of src maps into some cone of dst.
inline bool is_toric_morphism(const LatticeHom& h, const Fan& src, const Fan& dst) {
  if (h.source_dim() != src.dim || h.target_dim() != dst.dim)
    throw DimensionMismatch("lattice map dimensions do not match the fans");
  auto targets = cone_geometries(dst);
  for (const auto& cone : src.cones) {
    std::vector<IntVector> images;
    for (auto i : cone) images.push_back(h(src.rays[i]));
    bool placed = std::any_of(targets.begin(), targets.end(), [&](const SimplicialCone& t) {
      return std::all_of(images.begin(), images.end(), [&](const IntVector& x) { return t.contains(x); });
    });
    if (!placed) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// The cyclic quotient of P^n by the group of order n+1

struct AppendixFans {
  Fan fan_nprime;  // in the basis (n+1)e1, e2, ..., en of the sublattice N'
  Fan fan_n;       // in the standard basis of N
  LatticeHom inclusion;
};

inline AppendixFans build_appendix_fans(long long n) {
  if (n < 2) throw BadDimensionError("quotient example fans need n >= 2, got " + std::to_string(n));
  const auto d = static_cast<std::size_t>(n);
  std::vector<IntVector> rays(d + 1, IntVector(d, Integer(0)));
  rays[0][0] = n + 1;
  for (std::size_t j = 1; j < d; ++j) rays[0][j] = -static_cast<long long>(j + 1);
  for (std::size_t i = 1; i < d; ++i) rays[i][i] = 1;
  rays[d][0] = -(n + 1);
  for (std::size_t j = 1; j < d; ++j) rays[d][j] = static_cast<long long>(j);

  std::vector<std::vector<std::size_t>> cones;
  detail::for_each_subset(d + 1, d, [&](const std::vector<std::size_t>& s) { cones.push_back(s); });

  AppendixFans out;
  out.fan_n = Fan{d, rays, cones};
  std::vector<IntVector> sub = rays;
  for (auto& r : sub) r[0] /= (n + 1);
  out.fan_nprime = Fan{d, sub, cones};
  IntMatrix m = IntMatrix::identity(d);
  m(0, 0) = n + 1;
  out.inclusion = LatticeHom{m};
  return out;
}

}  // namespace quasiline
