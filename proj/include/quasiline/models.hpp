#pragma once

// Partially known invariants of a model (X, Y) and a forward-chaining
// engine deriving what the known relations between them force.

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace quasiline {

enum class Tri { Unknown, True, False };

inline Tri tri(bool b) { return b ? Tri::True : Tri::False; }
inline const char* to_string(Tri t) { return t == Tri::True ? "true" : t == Tri::False ? "false" : "unknown"; }

enum class Field { dim, e, e0, etilde, b, eX, g3, rational, unirational, strongly_rational };

inline constexpr std::array<Field, 10> kAllFields{Field::dim, Field::e,  Field::e0,       Field::etilde,
                                                  Field::b,   Field::eX, Field::g3,       Field::rational,
                                                  Field::unirational, Field::strongly_rational};

inline const char* to_string(Field f) {
  switch (f) {
    case Field::dim: return "dim";
    case Field::e: return "e";
    case Field::e0: return "e0";
    case Field::etilde: return "etilde";
    case Field::b: return "b";
    case Field::eX: return "eX";
    case Field::g3: return "g3";
    case Field::rational: return "rational";
    case Field::unirational: return "unirational";
    case Field::strongly_rational: return "strongly_rational";
  }
  return "?";
}

inline std::optional<Field> field_from_string(const std::string& s) {
  for (Field f : kAllFields)
    if (s == to_string(f)) return f;
  return std::nullopt;
}

inline bool is_flag(Field f) { return f >= Field::g3; }

struct ModelRecord {
  std::string name;
  std::optional<long long> dim, e, e0, etilde, b, eX;
  Tri g3 = Tri::Unknown, rational = Tri::Unknown, unirational = Tri::Unknown, strongly_rational = Tri::Unknown;
  std::map<std::string, std::string> provenance;

  std::optional<long long>& number(Field f) {
    switch (f) {
      case Field::dim: return dim;
      case Field::e: return e;
      case Field::e0: return e0;
      case Field::etilde: return etilde;
      case Field::b: return b;
      default: return eX;
    }
  }
  const std::optional<long long>& number(Field f) const { return const_cast<ModelRecord*>(this)->number(f); }

  Tri& flag(Field f) {
    switch (f) {
      case Field::g3: return g3;
      case Field::rational: return rational;
      case Field::unirational: return unirational;
      default: return strongly_rational;
    }
  }
  Tri flag(Field f) const { return const_cast<ModelRecord*>(this)->flag(f); }

  bool known(Field f) const { return is_flag(f) ? flag(f) != Tri::Unknown : number(f).has_value(); }

  std::string value_string(Field f) const {
    if (is_flag(f)) return to_string(flag(f));
    return number(f) ? std::to_string(*number(f)) : "unknown";
  }

  /// Same invariant values; names and provenance are ignored.
  bool same_values(const ModelRecord& o) const {
    for (Field f : kAllFields)
      if (value_string(f) != o.value_string(f)) return false;
    return true;
  }
};

struct RuleFiring {
  std::string rule;
  std::vector<Field> inputs;
  std::optional<Field> derived;
  std::string value;
  bool contradiction = false;
  std::string detail;
};

struct PropagationResult {
  ModelRecord record;
  std::vector<RuleFiring> firings;      // derivations, in order
  std::vector<RuleFiring> contradictions;

  bool consistent() const { return contradictions.empty(); }
  const RuleFiring* primary_contradiction() const { return contradictions.empty() ? nullptr : &contradictions.front(); }
};

struct RuleInfo {
  const char* id;
  const char* statement;
};

inline const std::vector<RuleInfo>& rule_table() {
  static const std::vector<RuleInfo> rules{
      {"R1", "e = etilde * b"},
      {"R2", "e0 <= etilde <= e"},
      {"R3", "g3 iff etilde = e"},
      {"R4", "e = 1 implies rational"},
      {"R5", "e0 = 1 implies unirational"},
      {"R6", "e = 1 implies g3"},
      {"R7", "strongly rational implies rational"},
      {"R8", "rational iff e(X) = 1"},
      {"R9", "rational implies unirational"},
      {"R10", "rational implies e(X) = 1"},
  };
  return rules;
}

namespace detail {

class Engine {
 public:
  explicit Engine(PropagationResult& out) : out_(out), r_(out.record) {}

  bool changed = false;

  void set(const char* rule, Field f, long long v, std::vector<Field> inputs) {
    auto& slot = r_.number(f);
    if (!slot) {
      slot = v;
      note(rule, f, std::to_string(v), std::move(inputs));
    } else if (*slot != v) {
      inputs.push_back(f);
      conflict(rule, std::move(inputs), std::string(to_string(f)) + " = " + std::to_string(*slot) + " but " + rule +
                                            " forces " + std::to_string(v));
    }
  }

  void set(const char* rule, Field f, bool v, std::vector<Field> inputs) {
    Tri& slot = r_.flag(f);
    if (slot == Tri::Unknown) {
      slot = tri(v);
      note(rule, f, v ? "true" : "false", std::move(inputs));
    } else if (slot != tri(v)) {
      inputs.push_back(f);
      conflict(rule, std::move(inputs),
               std::string(to_string(f)) + " = " + to_string(slot) + " but " + rule + " forces " + (v ? "true" : "false"));
    }
  }

  void conflict(const char* rule, std::vector<Field> fields, std::string detail) {
    for (const auto& c : out_.contradictions)
      if (c.rule == rule && c.detail == detail) return;
    out_.contradictions.push_back(RuleFiring{rule, std::move(fields), std::nullopt, "", true, std::move(detail)});
  }

  void run_pass() {
    const ModelRecord& r = r_;
    // R1
    if (r.etilde && r.b) set("R1", Field::e, *r.etilde * *r.b, {Field::etilde, Field::b});
    if (r.e && r.etilde) {
      if (*r.e % *r.etilde == 0) set("R1", Field::b, *r.e / *r.etilde, {Field::e, Field::etilde});
      else conflict("R1", {Field::e, Field::etilde}, "etilde = " + std::to_string(*r.etilde) + " does not divide e = " + std::to_string(*r.e));
    }
    if (r.e && r.b) {
      if (*r.e % *r.b == 0) set("R1", Field::etilde, *r.e / *r.b, {Field::e, Field::b});
      else conflict("R1", {Field::e, Field::b}, "b = " + std::to_string(*r.b) + " does not divide e = " + std::to_string(*r.e));
    }
    // R2
    auto le = [&](Field lo, Field hi) {
      const auto &a = r.number(lo), &c = r.number(hi);
      if (a && c && *a > *c)
        conflict("R2", {lo, hi}, std::string(to_string(lo)) + " = " + std::to_string(*a) + " exceeds " + to_string(hi) +
                                     " = " + std::to_string(*c));
    };
    le(Field::e0, Field::etilde);
    le(Field::etilde, Field::e);
    le(Field::e0, Field::e);
    if (r.e0 && r.e && *r.e0 == *r.e) set("R2", Field::etilde, *r.e, {Field::e0, Field::e});
    if (r.e && *r.e == 1) {
      set("R2", Field::etilde, 1LL, {Field::e});
      set("R2", Field::e0, 1LL, {Field::e});
    }
    if (r.etilde && *r.etilde == 1) set("R2", Field::e0, 1LL, {Field::etilde});
    // R3
    if (r.etilde && r.e) set("R3", Field::g3, *r.etilde == *r.e, {Field::etilde, Field::e});
    if (r.g3 == Tri::True && r.e) set("R3", Field::etilde, *r.e, {Field::g3, Field::e});
    if (r.g3 == Tri::True && r.etilde) set("R3", Field::e, *r.etilde, {Field::g3, Field::etilde});
    // R4
    if (r.e && *r.e == 1) set("R4", Field::rational, true, {Field::e});
    // R5
    if (r.e0 && *r.e0 == 1) set("R5", Field::unirational, true, {Field::e0});
    // R6
    if (r.e && *r.e == 1) set("R6", Field::g3, true, {Field::e});
    // R7 and its contrapositive
    if (r.strongly_rational == Tri::True) set("R7", Field::rational, true, {Field::strongly_rational});
    if (r.rational == Tri::False) set("R7", Field::strongly_rational, false, {Field::rational});
    // R8
    if (r.eX) set("R8", Field::rational, *r.eX == 1, {Field::eX});
    // R9 and its contrapositive
    if (r.rational == Tri::True) set("R9", Field::unirational, true, {Field::rational});
    if (r.unirational == Tri::False) set("R9", Field::rational, false, {Field::unirational});
    // R10
    if (r.rational == Tri::True) set("R10", Field::eX, 1LL, {Field::rational});
  }

 private:
  void note(const char* rule, Field f, std::string v, std::vector<Field> inputs) {
    changed = true;
    std::string from;
    for (std::size_t i = 0; i < inputs.size(); ++i) from += (i ? ", " : "") + std::string(to_string(inputs[i]));
    r_.provenance[to_string(f)] = std::string("derived by ") + rule + " from " + from;
    out_.firings.push_back(RuleFiring{rule, std::move(inputs), f, std::move(v), false, ""});
  }

  PropagationResult& out_;
  ModelRecord& r_;
};

}  // namespace detail

/// Runs every rule to a fixed point. A pass that finds a contradiction
/// finishes, so all violated rules of that pass are reported.
inline PropagationResult propagate(const ModelRecord& input) {
  PropagationResult out{input, {}, {}};
  for (Field f : kAllFields)
    if (f != Field::dim && !is_flag(f) && input.number(f) && *input.number(f) < 1)
      out.contradictions.push_back(
          RuleFiring{"domain", {f}, std::nullopt, "", true, std::string(to_string(f)) + " must be a positive integer"});
  if (!out.consistent()) return out;
  detail::Engine engine(out);
  do {
    engine.changed = false;
    engine.run_pass();
  } while (engine.changed && out.consistent());
  return out;
}

struct ConsistencyReport {
  ModelRecord input;
  PropagationResult result;
  std::vector<Field> derived_fields;

  bool consistent() const { return result.consistent(); }
};

inline ConsistencyReport check_record(const ModelRecord& r) {
  ConsistencyReport rep{r, propagate(r), {}};
  for (Field f : kAllFields)
    if (!r.known(f) && rep.result.record.known(f)) rep.derived_fields.push_back(f);
  return rep;
}

/// Worked examples. n is the dimension for the families indexed by it.
inline std::vector<ModelRecord> catalog(long long n = 3) {
  std::vector<ModelRecord> out;
  {
    ModelRecord r;
    r.name = "projective-space-line";
    r.dim = n;
    r.e = 1;
    r.provenance["e"] = "a line through two general points of projective space";
    out.push_back(r);
  }
  {
    ModelRecord r;
    r.name = "cubic-conic";
    r.dim = 3;
    r.e = 6;
    r.e0 = 6;
    r.rational = Tri::False;
    r.provenance["e"] = "six conics through two general points";
    r.provenance["e0"] = "six conics through a point with a general tangent direction";
    r.provenance["rational"] = "the smooth cubic threefold is not rational";
    out.push_back(r);
  }
  {
    ModelRecord r;
    r.name = "toric-quotient";
    r.dim = n;
    r.e0 = 1;
    r.e = n + 1;
    r.b = n + 1;
    r.provenance["e0"] = "equal to e0 of a line in projective space";
    r.provenance["e"] = "n+1 images of lines through two general points";
    r.provenance["b"] = "degree of the quotient map by the cyclic group of order n+1";
    out.push_back(r);
  }
  {
    ModelRecord r;
    r.name = "cotangent-projectivization";
    r.dim = 2 * n - 1;
    r.e = 1;
    r.g3 = Tri::True;
    r.provenance["e"] = "almost-line in the projectivized cotangent bundle of P^n";
    r.provenance["g3"] = "quasi-line with e = 1";
    out.push_back(r);
  }
  return out;
}

inline std::optional<ModelRecord> catalog_entry(const std::string& name, long long n = 3) {
  for (auto& r : catalog(n))
    if (r.name == name) return r;
  return std::nullopt;
}

}  // namespace quasiline
