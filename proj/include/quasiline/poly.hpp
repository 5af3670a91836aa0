#pragma once

// Sparse multivariate polynomials over Q, univariate gcd, and Sylvester
// resultants computed as exact determinants.

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "quasiline/lattice.hpp"

namespace quasiline {

class ZeroPolynomialError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using Exponent = std::vector<unsigned>;

class MultiPoly {
 public:
  MultiPoly() = default;
  explicit MultiPoly(std::size_t nvars) : nvars_(nvars) {}

  static MultiPoly constant(std::size_t nvars, const Rational& c) {
    MultiPoly p(nvars);
    p.add_term(Exponent(nvars, 0), c);
    return p;
  }

  static MultiPoly variable(std::size_t nvars, std::size_t i) {
    if (i >= nvars) throw DimensionMismatch("variable index out of range");
    MultiPoly p(nvars);
    Exponent e(nvars, 0);
    e[i] = 1;
    p.add_term(e, Rational(1));
    return p;
  }

  static MultiPoly monomial(const Exponent& e, const Rational& c) {
    MultiPoly p(e.size());
    p.add_term(e, c);
    return p;
  }

  std::size_t nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Exponent, Rational>& terms() const { return terms_; }

  void add_term(const Exponent& e, const Rational& c) {
    if (e.size() != nvars_) throw DimensionMismatch("exponent length does not match variable count");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Rational coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  /// Degree in one variable; -1 for the zero polynomial.
  int degree(std::size_t var) const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(e.at(var)));
    return d;
  }

  int total_degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) {
      int s = 0;
      for (auto x : e) s += static_cast<int>(x);
      d = std::max(d, s);
    }
    return d;
  }

  bool is_homogeneous() const {
    int d = total_degree();
    for (const auto& [e, c] : terms_) {
      int s = 0;
      for (auto x : e) s += static_cast<int>(x);
      if (s != d) return false;
    }
    return true;
  }

  /// Coefficient of var^k, as a polynomial in the same variables (var absent).
  MultiPoly coefficient_of(std::size_t var, unsigned k) const {
    MultiPoly out(nvars_);
    for (const auto& [e, c] : terms_)
      if (e.at(var) == k) {
        Exponent f = e;
        f[var] = 0;
        out.add_term(f, c);
      }
    return out;
  }

  Rational evaluate(const RationalVector& x) const {
    if (x.size() != nvars_) throw DimensionMismatch("evaluation point has wrong length");
    Rational s = 0;
    for (const auto& [e, c] : terms_) {
      Rational m = c;
      for (std::size_t i = 0; i < nvars_; ++i)
        for (unsigned k = 0; k < e[i]; ++k) m *= x[i];
      s += m;
    }
    return s;
  }

  MultiPoly derivative(std::size_t var) const {
    MultiPoly out(nvars_);
    for (const auto& [e, c] : terms_) {
      if (e.at(var) == 0) continue;
      Exponent f = e;
      --f[var];
      out.add_term(f, c * e[var]);
    }
    return out;
  }

  /// Substitutes images[i] (polynomials in a common ring) for variable i.
  MultiPoly compose(const std::vector<MultiPoly>& images) const {
    if (images.size() != nvars_) throw DimensionMismatch("compose needs one image per variable");
    const std::size_t m = images.empty() ? 0 : images.front().nvars();
    for (const auto& im : images)
      if (im.nvars() != m) throw DimensionMismatch("compose images live in different rings");
    std::vector<std::vector<MultiPoly>> powers(nvars_);
    MultiPoly out(m);
    for (const auto& [e, c] : terms_) {
      MultiPoly term = constant(m, c);
      for (std::size_t i = 0; i < nvars_; ++i) {
        if (e[i] == 0) continue;
        auto& pw = powers[i];
        if (pw.empty()) pw.push_back(constant(m, Rational(1)));
        while (pw.size() <= e[i]) pw.push_back(pw.back() * images[i]);
        term = term * pw[e[i]];
      }
      out += term;
    }
    return out;
  }

  /// Replaces one variable by a polynomial in the same ring.
  MultiPoly substitute(std::size_t var, const MultiPoly& value) const {
    std::vector<MultiPoly> images;
    for (std::size_t i = 0; i < nvars_; ++i) images.push_back(i == var ? value : variable(nvars_, i));
    return compose(images);
  }

  /// Re-indexes into a ring with new_nvars variables; var i maps to mapping[i],
  /// which must be valid for every variable that actually occurs.
  MultiPoly remap(std::size_t new_nvars, const std::vector<std::size_t>& mapping) const {
    MultiPoly out(new_nvars);
    for (const auto& [e, c] : terms_) {
      Exponent f(new_nvars, 0);
      for (std::size_t i = 0; i < nvars_; ++i) {
        if (e[i] == 0) continue;
        if (mapping.at(i) >= new_nvars) throw DimensionMismatch("remap drops a variable that occurs");
        f[mapping[i]] += e[i];
      }
      out.add_term(f, c);
    }
    return out;
  }

  MultiPoly& operator+=(const MultiPoly& o) {
    check(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }

  MultiPoly& operator-=(const MultiPoly& o) {
    check(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator-(const MultiPoly& a) { return a * Rational(-1); }

  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    a.check(b);
    MultiPoly out(a.nvars_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        Exponent e(a.nvars_);
        for (std::size_t i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
        out.add_term(e, ca * cb);
      }
    return out;
  }

  friend MultiPoly operator*(const MultiPoly& a, const Rational& k) {
    MultiPoly out(a.nvars_);
    if (k == 0) return out;
    for (const auto& [e, c] : a.terms_) out.terms_.emplace(e, c * k);
    return out;
  }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  std::string str(const std::vector<std::string>& names = {}) const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [e, c] = *it;
      Rational mag = abs(c);
      s += first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + ");
      first = false;
      std::string mono;
      for (std::size_t i = 0; i < nvars_; ++i) {
        if (e[i] == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += i < names.size() ? names[i] : "x" + std::to_string(i);
        if (e[i] > 1) mono += "^" + std::to_string(e[i]);
      }
      if (mono.empty()) {
        s += to_string(mag);
      } else {
        if (mag != 1) s += to_string(mag) + "*";
        s += mono;
      }
    }
    return s;
  }

 private:
  void check(const MultiPoly& o) const {
    if (o.nvars_ != nvars_) throw DimensionMismatch("polynomials live in different rings");
  }

  std::size_t nvars_ = 0;
  std::map<Exponent, Rational> terms_;
};

// ---------------------------------------------------------------------------
// Univariate helpers (dense coefficient lists, lowest degree first)

using UniPoly = std::vector<Rational>;

inline void trim(UniPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline int degree(const UniPoly& p) { return static_cast<int>(p.size()) - 1; }

/// Coefficients of a polynomial that involves only variable var.
inline UniPoly to_univariate(const MultiPoly& p, std::size_t var) {
  UniPoly out;
  for (const auto& [e, c] : p.terms()) {
    for (std::size_t i = 0; i < e.size(); ++i)
      if (i != var && e[i] != 0) throw DimensionMismatch("polynomial is not univariate in the requested variable");
    if (out.size() <= e[var]) out.resize(e[var] + 1);
    out[e[var]] = c;
  }
  trim(out);
  return out;
}

inline MultiPoly from_univariate(const UniPoly& p, std::size_t nvars, std::size_t var) {
  MultiPoly out(nvars);
  for (std::size_t k = 0; k < p.size(); ++k) {
    Exponent e(nvars, 0);
    e[var] = static_cast<unsigned>(k);
    out.add_term(e, p[k]);
  }
  return out;
}

inline UniPoly uni_derivative(const UniPoly& p) {
  UniPoly d;
  for (std::size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * static_cast<long long>(k));
  trim(d);
  return d;
}

/// Remainder of a divided by b (b nonzero).
inline UniPoly uni_remainder(UniPoly a, const UniPoly& b) {
  if (b.empty()) throw ZeroPolynomialError("division by the zero polynomial");
  trim(a);
  while (degree(a) >= degree(b)) {
    Rational k = a.back() / b.back();
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= k * b[i];
    trim(a);
  }
  return a;
}

/// Monic gcd over Q; gcd(0, 0) = 0.
inline UniPoly gcd_univariate(UniPoly a, UniPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    UniPoly r = uni_remainder(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    Rational lead = a.back();
    for (auto& c : a) c /= lead;
  }
  return a;
}

inline bool is_squarefree(const UniPoly& p) {
  if (degree(p) <= 0) return true;
  return degree(gcd_univariate(p, uni_derivative(p))) == 0;
}

// ---------------------------------------------------------------------------
// Resultants

/// Determinant of a square matrix of polynomials by Laplace expansion along
/// columns, memoized over row subsets.
inline MultiPoly poly_determinant(const std::vector<std::vector<MultiPoly>>& m, std::size_t nvars) {
  const std::size_t n = m.size();
  if (n == 0) return MultiPoly::constant(nvars, Rational(1));
  if (n > 30) throw std::invalid_argument("poly_determinant: matrix too large");
  std::unordered_map<std::uint32_t, MultiPoly> memo;
  // minor on rows in `mask` and the last popcount(mask) columns
  auto rec = [&](auto&& self, std::uint32_t mask, std::size_t col) -> MultiPoly {
    if (col == n) return MultiPoly::constant(nvars, Rational(1));
    auto it = memo.find(mask);
    if (it != memo.end()) return it->second;
    MultiPoly acc(nvars);
    int position = 0;
    for (std::size_t r = 0; r < n; ++r) {
      if (!(mask & (1u << r))) continue;
      if (!m[r][col].is_zero()) {
        MultiPoly sub = self(self, mask & ~(1u << r), col + 1);
        if (!sub.is_zero()) {
          MultiPoly t = m[r][col] * sub;
          if (position % 2) acc -= t;
          else acc += t;
        }
      }
      ++position;
    }
    memo.emplace(mask, acc);
    return acc;
  };
  std::uint32_t full = n == 32 ? ~0u : ((1u << n) - 1);
  return rec(rec, full, 0);
}

/// Sylvester matrix of p and q with respect to var (entries are polynomials
/// in the remaining variables).
inline std::vector<std::vector<MultiPoly>> sylvester_matrix(const MultiPoly& p, const MultiPoly& q, std::size_t var) {
  if (p.nvars() != q.nvars()) throw DimensionMismatch("resultant operands live in different rings");
  if (p.is_zero() || q.is_zero()) throw ZeroPolynomialError("resultant of the zero polynomial");
  const int m = p.degree(var);
  const int n = q.degree(var);
  if (m < 1 || n < 1) throw ZeroPolynomialError("resultant needs positive degree in the eliminated variable");
  const std::size_t size = static_cast<std::size_t>(m + n);
  std::vector<std::vector<MultiPoly>> s(size, std::vector<MultiPoly>(size, MultiPoly(p.nvars())));
  for (int r = 0; r < n; ++r)
    for (int k = 0; k <= m; ++k) s[r][r + (m - k)] = p.coefficient_of(var, static_cast<unsigned>(k));
  for (int r = 0; r < m; ++r)
    for (int k = 0; k <= n; ++k) s[n + r][r + (n - k)] = q.coefficient_of(var, static_cast<unsigned>(k));
  return s;
}

inline MultiPoly sylvester_resultant(const MultiPoly& p, const MultiPoly& q, std::size_t var) {
  return poly_determinant(sylvester_matrix(p, q, var), p.nvars());
}

}  // namespace quasiline
