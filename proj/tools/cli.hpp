#pragma once

// Command implementations for the quasiline tool. Every command builds an
// ordered JSON report; --format human renders the same tree as indented
// key/value lines.

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "quasiline/quasiline.hpp"

namespace quasiline::cli {

enum Exit { kOk = 0, kUsage = 1, kMath = 2, kInternal = 3 };

struct RunConfig {
  std::string format = "human";
  std::string out_path;
  std::uint64_t seed = 0;
};

/// A finished command: its report and the exit status it implies.
struct Outcome {
  Json report;
  int code = kOk;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline Json header(const std::string& command, const RunConfig& cfg) {
  Json j;
  j["command"] = command;
  j["seed"] = cfg.seed;
  j["rng"] = SeededRng::kName;
  return j;
}

inline bool is_scalar(const Json& j) { return !j.is_object() && !j.is_array(); }

inline std::string scalar_text(const Json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

inline void render_human(const Json& j, std::ostream& os, int indent = 0) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  auto inline_array = [](const Json& a) {
    std::string s = "[";
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i) s += ", ";
      if (a[i].is_array()) {
        s += "[";
        for (std::size_t k = 0; k < a[i].size(); ++k) s += (k ? ", " : "") + scalar_text(a[i][k]);
        s += "]";
      } else {
        s += scalar_text(a[i]);
      }
    }
    return s + "]";
  };
  auto flat = [](const Json& a) {
    for (const auto& x : a) {
      if (x.is_object()) return false;
      if (x.is_array())
        for (const auto& y : x)
          if (!is_scalar(y)) return false;
    }
    return true;
  };
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (is_scalar(v)) os << pad << k << ": " << scalar_text(v) << "\n";
      else if (v.is_array() && flat(v)) os << pad << k << ": " << inline_array(v) << "\n";
      else if (v.empty()) os << pad << k << ": " << (v.is_array() ? "[]" : "{}") << "\n";
      else {
        os << pad << k << ":\n";
        render_human(v, os, indent + 2);
      }
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (is_scalar(v)) os << pad << "- " << scalar_text(v) << "\n";
      else if (v.is_array() && flat(v)) os << pad << "- " << inline_array(v) << "\n";
      else {
        os << pad << "-\n";
        render_human(v, os, indent + 2);
      }
    }
  } else {
    os << pad << scalar_text(j) << "\n";
  }
}

inline std::string render(const Json& report, const std::string& format) {
  if (format == "structured") return report.dump(2) + "\n";
  std::ostringstream os;
  render_human(report, os);
  return os.str();
}

inline Json error_report(Json base, const std::string& kind, const std::string& message) {
  base["status"] = "error";
  base["error"] = kind;
  base["message"] = message;
  return base;
}

// ---------------------------------------------------------------------------
// quotient example

inline Json certificate_json(const Fan& f, const CartierCertificate& c) {
  Json j;
  j["cartier"] = c.cartier;
  if (c.cartier) {
    j["dual_vectors"] = Json::array();
    for (std::size_t i = 0; i < c.dual_vectors.size(); ++i) {
      Json d;
      d["cone"] = f.cones[i];
      d["m"] = to_json(c.dual_vectors[i]);
      j["dual_vectors"].push_back(d);
    }
  } else if (c.failing_cone) {
    j["failing_cone"] = f.cones[*c.failing_cone];
    j["rational_solution"] = to_json(c.rational_solution);
    Integer den = 1;
    for (const auto& q : c.rational_solution) den = boost::multiprecision::lcm(den, Integer(denominator(q)));
    j["denominator"] = to_json(den);
  }
  return j;
}

inline Json polyhedron_json(const SectionsPolyhedron& p) {
  Json a = Json::array();
  for (const auto& h : p.constraints) {
    Json c;
    c["normal"] = to_json(h.normal);
    c["rhs"] = to_json(h.rhs);
    a.push_back(c);
  }
  return a;
}

inline Json points_json(const LatticePointCount& c) {
  Json a = Json::array();
  for (const auto& p : c.points) a.push_back(to_json(p));
  return a;
}

inline Outcome cmd_appendix(long long n, long long cap, const RunConfig& cfg) {
  Json r = header("appendix", cfg);
  r["n"] = n;
  if (n < 2 || n > cap)
    return {error_report(r, "BadDimension", "n must lie in [2, " + std::to_string(cap) + "]"), kUsage};
  AppendixFans fans = build_appendix_fans(n);
  r["rays"] = Json::array();
  for (const auto& v : fans.fan_n.rays) r["rays"].push_back(to_json(v));
  r["fan_n_valid"] = validate_fan(fans.fan_n).valid();
  r["fan_nprime_valid"] = validate_fan(fans.fan_nprime).valid();
  r["quotient_is_toric_morphism"] = is_toric_morphism(fans.inclusion, fans.fan_nprime, fans.fan_n);
  r["index_of_nprime_in_n"] = to_json(*sublattice_index(fans.inclusion.matrix));
  Json mult = Json::array();
  for (const auto& c : fans.fan_n.cones) mult.push_back(to_json(cone_multiplicity(fans.fan_n, Cone{c})));
  r["multiplicities_n"] = mult;
  r["fan_nprime_smooth"] = is_smooth(fans.fan_nprime);

  const IntVector values = appendix_hyperplane_values(n);
  r["psi_values"] = to_json(values);
  SupportFunction on_nprime(fans.fan_nprime, values);
  SupportFunction on_n(fans.fan_n, values);
  r["cartier_on_nprime"] = certificate_json(fans.fan_nprime, is_cartier(on_nprime));
  r["cartier_on_n"] = certificate_json(fans.fan_n, is_cartier(on_n));
  SectionsPolyhedron pd = sections_polyhedron(on_n);
  r["sections_polyhedron"] = polyhedron_json(pd);
  LatticePointCount count = count_lattice_points(pd);
  r["lattice_points"] = points_json(count);
  r["h0"] = to_json(count.count);
  r["status"] = "ok";
  return {r, kOk};
}

inline Outcome cmd_lemma_a2(long long n, long long bound, std::size_t samples, const RunConfig& cfg) {
  Json r = header("lemma-a2", cfg);
  r["n"] = n;
  r["coeff_bound"] = bound;
  r["samples"] = samples;
  if (n < 2 || n > 3) return {error_report(r, "BadDimension", "lemma-a2 supports n in {2, 3}"), kUsage};
  if (bound < 0) return {error_report(r, "Usage", "--bound must be nonnegative"), kUsage};
  LemmaA2Report rep = lemma_a2_sample_check(n, bound, samples, cfg.seed);
  r["base_rays"] = rep.base_rays;
  r["refined_rays"] = rep.refined_rays;
  r["refined_cones"] = rep.refined_cones;
  r["refined_smooth"] = rep.refined_smooth;
  r["cartier_extensions"] = rep.cartier_extensions;
  r["rejected_not_cartier"] = rep.rejected_not_cartier;
  r["count_histogram"] = rep.count_histogram;
  r["violations"] = rep.violations;
  r["banner"] = rep.banner;
  r["status"] = rep.ok() ? "ok" : "violation";
  return {r, rep.ok() ? kOk : kInternal};
}

// ---------------------------------------------------------------------------
// bundle

struct BundleArgs {
  std::string subop;
  std::string type;
  std::string targets;
  long long anchor = 0;
  long long d = 1;
  long long dimD = 0;
  long long n = 0;  // 0: rank + 1
  bool quasiline = false;
};

inline SplittingType parse_type_arg(const std::string& text, const char* what) {
  if (text.empty()) throw UsageError(std::string("missing ") + what);
  try {
    return parse_splitting_type(text);
  } catch (const SplittingError& e) {
    throw UsageError(std::string(what) + ": " + e.what());
  }
}

inline std::vector<long long> parse_int_list(const std::string& text, const char* what) {
  if (text.empty()) throw UsageError(std::string("missing ") + what);
  try {
    return parse_integer_list(text);
  } catch (const SplittingError& e) {
    throw UsageError(std::string(what) + ": " + e.what());
  }
}

inline Json type_json(const SplittingType& t) { return t.exponents(); }

inline Outcome cmd_bundle(const BundleArgs& a, const RunConfig& cfg) {
  Json r = header("bundle", cfg);
  r["subop"] = a.subop;
  try {
    if (a.subop == "elm") {
      SplittingType t = parse_type_arg(a.type, "splitting type");
      r["input"] = type_json(t);
      r["result"] = type_json(elm_general(t));
    } else if (a.subop == "self-int") {
      SplittingType t = parse_type_arg(a.type, "splitting type");
      r["input"] = type_json(t);
      r["self_intersections"] = self_intersections(t);
    } else if (a.subop == "recover") {
      auto targets = parse_int_list(a.targets, "--targets");
      r["targets"] = targets;
      r["anchor_sum"] = a.anchor;
      r["result"] = type_json(recover_splitting(targets, a.anchor));
    } else if (a.subop == "plan") {
      SplittingType t = parse_type_arg(a.type, "splitting type");
      BlowupPlan plan = quasiline_plan(t);
      r["input"] = type_json(t);
      r["steps"] = Json::array();
      for (const auto& s : plan.steps) {
        Json step;
        step["kind"] = to_string(s.kind);
        step["result"] = type_json(s.result);
        r["steps"].push_back(step);
      }
      r["length"] = plan.steps.size();
      r["final"] = type_json(plan.final_type());
      r["almost_line"] = plan.almost_line;
    } else if (a.subop == "thm16") {
      SplittingType t = parse_type_arg(a.type, "splitting type");
      DivisorData dd{a.d, a.dimD, a.n ? a.n : static_cast<long long>(t.rank()) + 1};
      ReducedData red = thm16_reduction(t, dd);
      r["input"] = type_json(t);
      r["point_blowups"] = red.point_blowups;
      r["reduced_type"] = type_json(red.type);
      r["dY"] = red.dY;
      r["dimD"] = red.dimD;
      r["fibration_target_dim"] = red.fibration_target_dim;
    } else if (a.subop == "cor17") {
      SplittingType t = parse_type_arg(a.type, "splitting type");
      DivisorData dd{a.d, a.dimD, a.n ? a.n : static_cast<long long>(t.rank()) + 1};
      r["input"] = type_json(t);
      r["n"] = dd.n;
      r["d"] = dd.dY;
      r["dimD"] = dd.dimD;
      r["rational_criterion"] = cor17_rational_check(t, dd);
    } else if (a.subop == "thm41") {
      if (a.n < 2) throw UsageError("thm41 needs --n >= 2");
      DivisorData dd{a.d, a.dimD, a.n};
      r["n"] = dd.n;
      r["d"] = dd.dY;
      r["dimD"] = dd.dimD;
      r["quasiline"] = a.quasiline;
      r["strongly_rational_criterion"] = thm41_strongly_rational_check(dd, a.quasiline);
    } else {
      throw UsageError("unknown bundle operation '" + a.subop + "'");
    }
  } catch (const UsageError& e) {
    return {error_report(r, "Usage", e.what()), kUsage};
  } catch (const NotAmpleError& e) {
    return {error_report(r, "NotAmple", e.what()), kMath};
  } catch (const InapplicableError& e) {
    Json j = error_report(r, "Inapplicable", e.what());
    j["hypothesis"] = e.hypothesis();
    return {j, kMath};
  } catch (const SplittingError& e) {
    return {error_report(r, "Invalid", e.what()), kMath};
  }
  r["status"] = "ok";
  return {r, kOk};
}

// ---------------------------------------------------------------------------
// cubic

inline Json line_report_json(const LineCountReport& rep) {
  Json j;
  const std::vector<std::string> y{"y0", "y1", "y2"};
  j["eliminated_direction_variable"] = rep.eliminated_variable;
  j["restricted_conic"] = rep.conic.str(y);
  j["restricted_cubic"] = rep.cubic.str(y);
  j["resultant_variable"] = "y1 (y0 eliminated, y2 = 1)";
  j["resultant_coefficients"] = to_json(rep.resultant);
  j["resultant_degree"] = rep.resultant_degree;
  j["leading_ok"] = rep.leading_ok;
  j["squarefree"] = rep.squarefree;
  j["generic"] = rep.generic;
  j["count_with_multiplicity"] = rep.with_multiplicity;
  j["count"] = rep.count;
  return j;
}

/// x1 times a quadric that is nonzero at e0: contains the plane x1 = 0 through e0.
inline MultiPoly reducible_cubic(SeededRng& rng, long long bound) {
  MultiPoly q(5);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t k = i; k < 5; ++k) {
      Exponent e(5, 0);
      ++e[i];
      ++e[k];
      q.add_term(e, Rational(rng.uniform(-bound, bound)));
    }
  Exponent x0sq{2, 0, 0, 0, 0};
  if (q.coefficient(x0sq) == 0) q.add_term(x0sq, Rational(1));
  return MultiPoly::variable(5, 1) * q;
}

inline Outcome cmd_cubic(long long bound, std::size_t retries, bool reducible, const RunConfig& cfg) {
  Json r = header("cubic", cfg);
  r["bound"] = bound;
  const std::vector<std::string> x{"x0", "x1", "x2", "x3", "x4"};
  if (bound < 1) return {error_report(r, "Usage", "--bound must be positive"), kUsage};
  if (reducible) {
    SeededRng rng(cfg.seed);
    MultiPoly f = reducible_cubic(rng, bound);
    r["cubic"] = f.str(x);
    r["point"] = to_json(RationalVector{1, 0, 0, 0, 0});
    try {
      r["lines"] = line_report_json(count_lines_through_point(f, RationalVector{1, 0, 0, 0, 0}));
    } catch (const DegenerateError& e) {
      return {error_report(r, "Degenerate", e.what()), kMath};
    }
    r["status"] = "ok";
    return {r, kOk};
  }
  try {
    ConicCertificate c = e_conic_certificate(cfg.seed, bound, retries);
    r["attempts"] = c.attempts;
    r["cubic"] = c.f.str(x);
    r["point"] = to_json(c.point);
    r["lines"] = line_report_json(c.report);
    r["e_conic"] = c.e_conic();
    r["e0_conic"] = "6 (recorded, not recomputed)";
    r["note"] = "smoothness of the cubic is checked only at the sampled point";
  } catch (const RetriesExhaustedError& e) {
    return {error_report(r, "RetriesExhausted", e.what()), kMath};
  }
  r["status"] = "ok";
  return {r, kOk};
}

// ---------------------------------------------------------------------------
// models

inline Json firing_json(const RuleFiring& f) {
  Json j;
  j["rule"] = f.rule;
  for (const auto& info : rule_table())
    if (f.rule == info.id) j["statement"] = info.statement;
  Json in = Json::array();
  for (Field x : f.inputs) in.push_back(to_string(x));
  j[f.contradiction ? "fields" : "inputs"] = in;
  if (f.derived) j["derived"] = std::string(to_string(*f.derived)) + " = " + f.value;
  if (!f.detail.empty()) j["detail"] = f.detail;
  return j;
}

inline Json consistency_json(const ConsistencyReport& rep) {
  Json j;
  j["input"] = record_to_json(rep.input, false);
  j["result"] = record_to_json(rep.result.record);
  Json derived = Json::array();
  for (Field f : rep.derived_fields) derived.push_back(to_string(f));
  j["derived_fields"] = derived;
  j["firings"] = Json::array();
  for (const auto& f : rep.result.firings) j["firings"].push_back(firing_json(f));
  j["consistent"] = rep.consistent();
  if (!rep.consistent()) {
    j["contradiction"] = rep.result.primary_contradiction()->rule;
    j["violations"] = Json::array();
    for (const auto& c : rep.result.contradictions) j["violations"].push_back(firing_json(c));
  }
  return j;
}

inline Outcome cmd_models(const std::string& file, const std::string& builtin, long long n, const RunConfig& cfg) {
  Json r = header("models", cfg);
  std::vector<ModelRecord> records;
  if (!file.empty() && !builtin.empty()) return {error_report(r, "Usage", "give a record file or --builtin, not both"), kUsage};
  if (n < 1) return {error_report(r, "Usage", "--n must be positive"), kUsage};
  if (!file.empty()) {
    try {
      Json doc = read_json_file(file);
      if (doc.is_array())
        for (const auto& x : doc) records.push_back(record_from_json(x));
      else
        records.push_back(record_from_json(doc));
    } catch (const ParseError& e) {
      return {error_report(r, "Parse", e.what()), kUsage};
    }
  } else if (!builtin.empty()) {
    auto rec = catalog_entry(builtin, n);
    if (!rec) {
      std::string names;
      for (const auto& c : catalog(n)) names += (names.empty() ? "" : ", ") + c.name;
      return {error_report(r, "Usage", "unknown builtin '" + builtin + "' (known: " + names + ")"), kUsage};
    }
    records.push_back(*rec);
  } else {
    records = catalog(n);
  }
  r["records"] = Json::array();
  bool ok = true;
  for (const auto& rec : records) {
    ConsistencyReport rep = check_record(rec);
    ok = ok && rep.consistent();
    Json j;
    j["name"] = rec.name;
    j.update(consistency_json(rep));
    r["records"].push_back(j);
  }
  r["status"] = ok ? "ok" : "contradiction";
  return {r, ok ? kOk : kMath};
}

// ---------------------------------------------------------------------------
// fan

inline Json fan_summary(const Fan& f) {
  Json j = fan_to_json(f);
  Json mult = Json::array();
  for (const auto& c : f.cones) mult.push_back(to_json(cone_index(f, c)));
  j["cone_indices"] = mult;
  return j;
}

inline Outcome cmd_fan(const std::string& subop, const std::string& file, const RunConfig& cfg) {
  Json r = header("fan", cfg);
  r["subop"] = subop;
  r["input"] = file;
  try {
    Json doc = read_json_file(file);
    if (subop == "validate" || subop == "desingularize") {
      Fan f = fan_from_json(doc.contains("fan") ? doc["fan"] : doc);
      ValidationReport v = validate_fan(f);
      r["valid"] = v.valid();
      r["violations"] = Json::array();
      for (const auto& e : v.violations) {
        Json x;
        x["kind"] = to_string(e.kind);
        x["detail"] = e.detail;
        r["violations"].push_back(x);
      }
      if (subop == "validate") {
        if (v.valid()) r["smooth"] = is_smooth(f);
        r["status"] = "ok";
        return {r, kOk};
      }
      if (!v.valid()) return {error_report(r, "InvalidFan", "input fan is not valid"), kUsage};
      Fan d = desingularize(f);
      r["smooth"] = is_smooth(d);
      r["added_rays"] = d.rays.size() - f.rays.size();
      r["result"] = fan_summary(d);
    } else if (subop == "cartier" || subop == "h0") {
      SupportFunction psi = divisor_from_json(doc);
      if (subop == "cartier") {
        ValidationReport v = validate_fan(psi.fan);
        if (!v.valid()) return {error_report(r, "InvalidFan", "divisor fan is not valid"), kUsage};
        r["certificate"] = certificate_json(psi.fan, is_cartier(psi));
      } else {
        SectionsPolyhedron p = sections_polyhedron(psi);
        r["sections_polyhedron"] = polyhedron_json(p);
        LatticePointCount c = count_lattice_points(p);
        r["lattice_points"] = points_json(c);
        r["h0"] = to_json(c.count);
      }
    } else {
      return {error_report(r, "Usage", "unknown fan operation '" + subop + "'"), kUsage};
    }
  } catch (const ParseError& e) {
    return {error_report(r, "Parse", e.what()), kUsage};
  } catch (const DivisorError& e) {
    if (dynamic_cast<const UnboundedError*>(&e)) return {error_report(r, "Unbounded", e.what()), kMath};
    return {error_report(r, "Divisor", e.what()), kUsage};
  } catch (const FanError& e) {
    return {error_report(r, "Fan", e.what()), kUsage};
  } catch (const LatticeError& e) {
    return {error_report(r, "Lattice", e.what()), kUsage};
  }
  r["status"] = "ok";
  return {r, kOk};
}

// ---------------------------------------------------------------------------
// entry point

/// Parses argv, runs the command, writes the report to out (or --out) and
/// returns the exit code.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact toric, bundle, cubic and invariant computations"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  app.add_option("--format", cfg.format, "human or structured")
      ->check(CLI::IsMember({"human", "structured"}))
      ->capture_default_str();
  app.add_option("--out", cfg.out_path, "write the report to this file");
  app.add_option("--seed", cfg.seed, "seed for every random choice")->capture_default_str();

  std::function<Outcome()> action;

  long long n = 2, cap = 8, bound = 5;
  std::size_t samples = 100, retries = 20;
  auto* appendix = app.add_subcommand("appendix", "sections of the quotient-example divisor");
  appendix->add_option("--n", n, "dimension")->capture_default_str();
  appendix->add_option("--cap", cap, "largest accepted n")->capture_default_str();
  appendix->callback([&] { action = [&] { return cmd_appendix(n, cap, cfg); }; });

  auto* a2 = app.add_subcommand("lemma-a2", "sample Cartier extensions on a desingularization");
  a2->add_option("--n", n, "dimension (2 or 3)")->capture_default_str();
  a2->add_option("--bound", bound, "range for values on new rays")->capture_default_str();
  a2->add_option("--samples", samples, "number of sampled extensions")->capture_default_str();
  a2->callback([&] { action = [&] { return cmd_lemma_a2(n, bound, samples, cfg); }; });

  BundleArgs ba;
  auto* bundle = app.add_subcommand("bundle", "splitting-type calculus");
  bundle->add_option("subop", ba.subop, "elm | plan | self-int | recover | cor17 | thm41 | thm16")
      ->required()
      ->check(CLI::IsMember({"elm", "plan", "self-int", "recover", "cor17", "thm41", "thm16"}));
  bundle->add_option("type,--type", ba.type, "splitting type a1,...,ak");
  bundle->add_option("--targets", ba.targets, "self-intersection targets (recover)");
  bundle->add_option("--anchor", ba.anchor, "total degree (recover)");
  bundle->add_option("--d", ba.d, "D.Y")->capture_default_str();
  bundle->add_option("--dimD", ba.dimD, "dim |D|")->capture_default_str();
  bundle->add_option("--n", ba.n, "ambient dimension (default rank + 1)");
  bundle->add_flag("--quasiline", ba.quasiline, "a quasi-line is present (thm41)");
  bundle->callback([&] { action = [&] { return cmd_bundle(ba, cfg); }; });

  bool reducible = false;
  long long cubic_bound = 9;
  auto* cubic = app.add_subcommand("cubic", "lines through a point of a random cubic threefold");
  cubic->add_option("--bound", cubic_bound, "coefficient range")->capture_default_str();
  cubic->add_option("--retries", retries, "cubics to try before giving up")->capture_default_str();
  cubic->add_flag("--reducible", reducible, "use a cubic containing a plane through the point");
  cubic->callback([&] { action = [&] { return cmd_cubic(cubic_bound, retries, reducible, cfg); }; });

  std::string record_file, builtin;
  long long model_n = 3;
  auto* models = app.add_subcommand("models", "propagate invariants of models");
  models->add_option("file", record_file, "record file (JSON object or list)");
  models->add_option("--builtin", builtin, "catalog entry name");
  models->add_option("--n", model_n, "dimension for catalog entries")->capture_default_str();
  models->callback([&] { action = [&] { return cmd_models(record_file, builtin, model_n, cfg); }; });

  std::string fan_op, fan_file;
  auto* fan = app.add_subcommand("fan", "fan and divisor files");
  fan->add_option("subop", fan_op, "validate | desingularize | cartier | h0")
      ->required()
      ->check(CLI::IsMember({"validate", "desingularize", "cartier", "h0"}));
  fan->add_option("file", fan_file, "fan or divisor JSON file")->required();
  fan->callback([&] { action = [&] { return cmd_fan(fan_op, fan_file, cfg); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }

  Outcome outcome;
  try {
    outcome = action();
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  const std::string text = render(outcome.report, cfg.format);
  if (!cfg.out_path.empty()) {
    std::ofstream f(cfg.out_path);
    if (!f) {
      err << "cannot write '" << cfg.out_path << "'\n";
      return kUsage;
    }
    f << text;
  } else {
    out << text;
  }
  if (outcome.code != kOk && outcome.report.contains("message"))
    err << outcome.report.value("error", "error") << ": " << outcome.report["message"].get<std::string>() << "\n";
  return outcome.code;
}

}  // namespace quasiline::cli
