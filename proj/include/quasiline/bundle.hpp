#pragma once

// Splitting types O(a_1) + ... + O(a_k) on the projective line and the
// numerical calculus of elementary transforms and blow-ups acting on them.
// Only general position is modelled: elementary transforms centred at a
// general hyperplane and codimension-2 centres meeting the curve in one
// general point.

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace quasiline {

class SplittingError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotAmpleError : public SplittingError {
 public:
  using SplittingError::SplittingError;
};

class InapplicableError : public std::runtime_error {
 public:
  explicit InapplicableError(std::string hypothesis)
      : std::runtime_error("hypothesis violated: " + hypothesis), hypothesis_(std::move(hypothesis)) {}
  const std::string& hypothesis() const { return hypothesis_; }

 private:
  std::string hypothesis_;
};

/// Sorted exponent multiset; equality is multiset equality.
class SplittingType {
 public:
  SplittingType(std::vector<long long> exponents) : a_(std::move(exponents)) {  // NOLINT implicit
    if (a_.empty()) throw SplittingError("splitting type needs at least one summand");
    std::sort(a_.begin(), a_.end());
  }
  SplittingType(std::initializer_list<long long> xs) : SplittingType(std::vector<long long>(xs)) {}

  const std::vector<long long>& exponents() const { return a_; }
  std::size_t rank() const { return a_.size(); }
  long long min() const { return a_.front(); }
  long long max() const { return a_.back(); }
  long long degree() const { return std::accumulate(a_.begin(), a_.end(), 0LL); }
  bool is_quasiline() const {
    return std::all_of(a_.begin(), a_.end(), [](long long x) { return x == 1; });
  }

  std::string str() const {
    std::string s;
    for (std::size_t i = 0; i < a_.size(); ++i) s += (i ? "," : "") + std::to_string(a_[i]);
    return s;
  }

  friend bool operator==(const SplittingType&, const SplittingType&) = default;

 private:
  std::vector<long long> a_;
};

/// Intersection data of a divisor D with the curve: D.Y, dim |D| and the
/// dimension n of the ambient manifold.
struct DivisorData {
  long long dY = 0;
  long long dimD = 0;
  long long n = 2;
};

/// Top self-intersections of the splitting divisors of P(V):
/// entry i is -(a_1 + ... + a_k) + k a_i.
inline std::vector<long long> self_intersections(const SplittingType& t) {
  const long long k = static_cast<long long>(t.rank());
  const long long s = t.degree();
  std::vector<long long> out;
  for (long long a : t.exponents()) out.push_back(-s + k * a);
  return out;
}

/// Inverse of self_intersections once the total degree is fixed (the
/// self-intersections alone only determine the type up to a twist).
inline SplittingType recover_splitting(const std::vector<long long>& targets, long long anchor_sum) {
  const long long k = static_cast<long long>(targets.size());
  if (k < 2) throw SplittingError("recover_splitting needs at least two targets");
  for (std::size_t i = 1; i < targets.size(); ++i)
    if ((targets[i] - targets[0]) % k != 0)
      throw SplittingError("differences of self-intersections must be divisible by " + std::to_string(k));
  if (std::accumulate(targets.begin(), targets.end(), 0LL) != 0)
    throw SplittingError("self-intersection numbers must sum to zero");
  std::vector<long long> a;
  for (long long t : targets) {
    if ((t + anchor_sum) % k != 0)
      throw SplittingError("degree " + std::to_string(anchor_sum) + " is incompatible with the targets");
    a.push_back((t + anchor_sum) / k);
  }
  return SplittingType(a);
}

namespace detail {
inline SplittingType decrement_top(const SplittingType& t) {
  std::vector<long long> a = t.exponents();
  --a.back();
  return SplittingType(a);
}
}  // namespace detail

/// Elementary transform at a general hyperplane of a fibre: the largest
/// exponent drops by one.
inline SplittingType elm_general(const SplittingType& t) {
  if (t.rank() < 2) throw SplittingError("elementary transform needs rank >= 2");
  return detail::decrement_top(t);
}

/// Normal bundle after blowing up a point of the curve: N (x) O(-p).
inline SplittingType blowup_point(const SplittingType& t) {
  std::vector<long long> a = t.exponents();
  for (auto& x : a) --x;
  return SplittingType(a);
}

/// Normal bundle after blowing up a general codimension-2 centre meeting the
/// curve in one point.
inline SplittingType blowup_codim2_general(const SplittingType& t) { return detail::decrement_top(t); }

enum class StepKind { Codim2Center, Point };

inline const char* to_string(StepKind k) { return k == StepKind::Point ? "point" : "codim2"; }

struct BlowupStep {
  StepKind kind;
  SplittingType result;
};

struct BlowupPlan {
  SplittingType start;
  std::vector<BlowupStep> steps;
  // the exceptional divisor E of the last blow-up has E.Y = 1
  bool almost_line = false;

  const SplittingType& final_type() const { return steps.empty() ? start : steps.back().result; }
};

/// Codimension-2 blow-ups turning a curve with ample normal bundle into a
/// quasi-line; sum(a_i - 1) steps.
inline BlowupPlan quasiline_plan(const SplittingType& t) {
  if (t.min() < 1) throw NotAmpleError("normal bundle " + t.str() + " is not ample");
  BlowupPlan plan{t, {}, false};
  SplittingType cur = t;
  while (!cur.is_quasiline()) {
    cur = blowup_codim2_general(cur);
    plan.steps.push_back({StepKind::Codim2Center, cur});
  }
  plan.almost_line = !plan.steps.empty();
  return plan;
}

struct ReducedData {
  SplittingType type;
  std::size_t point_blowups = 0;
  long long dY = 1;
  long long dimD = 0;
  long long fibration_target_dim = 0;  // dim |D| - d + 1
};

/// Blow up d-1 points of the curve so that D.Y becomes 1. Requires
/// a_1 >= d and dim|D| >= d.
inline ReducedData thm16_reduction(const SplittingType& t, const DivisorData& dd) {
  const long long d = dd.dY;
  if (d < 1) throw InapplicableError("D.Y = d > 0");
  if (t.min() < d) throw InapplicableError("a_1 >= d");
  if (dd.dimD < d) throw InapplicableError("dim|D| >= d");
  SplittingType cur = t;
  for (long long i = 0; i < d - 1; ++i) cur = blowup_point(cur);
  return ReducedData{cur, static_cast<std::size_t>(d - 1), 1, dd.dimD - (d - 1), dd.dimD - d + 1};
}

/// Rationality criterion: 0 < d <= a_1 and dim|D| >= n + d - 1.
inline bool cor17_rational_check(const SplittingType& t, const DivisorData& dd) {
  if (dd.n != static_cast<long long>(t.rank()) + 1)
    throw SplittingError("ambient dimension must be rank + 1");
  return dd.dY > 0 && dd.dY <= t.min() && dd.dimD >= dd.n + dd.dY - 1;
}

/// Strong rationality criterion: a quasi-line plus D with D.Y = 1 and dim|D| >= n.
inline bool thm41_strongly_rational_check(const DivisorData& dd, bool has_quasiline) {
  return has_quasiline && dd.dY == 1 && dd.dimD >= dd.n;
}

/// Parses "a,b,c" keeping the given order; errors report the 0-based
/// character position.
inline std::vector<long long> parse_integer_list(const std::string& text) {
  std::vector<long long> a;
  std::size_t pos = 0;
  if (text.empty()) throw SplittingError("empty splitting type");
  while (pos <= text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string::npos) end = text.size();
    std::string tok = text.substr(pos, end - pos);
    std::size_t lead = tok.find_first_not_of(' ');
    std::size_t trail = tok.find_last_not_of(' ');
    if (lead == std::string::npos) throw SplittingError("empty entry at position " + std::to_string(pos));
    tok = tok.substr(lead, trail - lead + 1);
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size() || tok.empty())
      throw SplittingError("invalid integer '" + tok + "' at position " + std::to_string(pos + lead + used));
    a.push_back(v);
    if (end == text.size()) break;
    pos = end + 1;
  }
  return a;
}

inline SplittingType parse_splitting_type(const std::string& text) { return SplittingType(parse_integer_list(text)); }

}  // namespace quasiline
