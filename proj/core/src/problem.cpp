#include "kcomp/problem.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include "json.hpp"

namespace kcomp {

namespace {

using njson = nlohmann::ordered_json;

[[noreturn]] void bad_field(const std::string& field, const std::string& why) {
  throw ValidationError("spec field \"" + field + "\": " + why);
}

double get_num(const njson& j, const std::string& field) {
  if (!j.is_number()) bad_field(field, "must be a number");
  return j.get<double>();
}

std::pair<double, double> get_interval(const njson& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    bad_field(field, "must be an array [a, b] of two numbers");
  }
  const double a = j[0].get<double>(), b = j[1].get<double>();
  if (!(a < b)) bad_field(field, "must satisfy a < b");
  return {a, b};
}

std::vector<cplx> get_points(const njson& j, const std::string& field) {
  if (!j.is_array()) bad_field(field, "must be an array of [re, im] pairs");
  std::vector<cplx> out;
  for (const auto& p : j) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
      bad_field(field, "every entry must be a pair [re, im]");
    }
    out.emplace_back(p[0].get<double>(), p[1].get<double>());
  }
  return out;
}

}  // namespace

ProblemSpec ProblemSpec::parse_text(const std::string& text) {
  njson doc;
  try {
    doc = njson::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("spec is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("spec top level must be a JSON object");

  ProblemSpec spec;
  spec.config_echo = text;

  if (!doc.contains("space") || !doc["space"].is_object()) {
    bad_field("space", "required object");
  }
  const njson& sp = doc["space"];
  if (!sp.contains("kind") || !sp["kind"].is_string()) bad_field("space.kind", "required string");
  spec.space.kind = sp["kind"].get<std::string>();
  if (spec.space.kind == "pw") {
    // type pi implied; nothing else to read.
  } else if (spec.space.kind == "hb") {
    if (!sp.contains("type_a")) bad_field("space.type_a", "required for kind \"hb\"");
    spec.space.type_a = get_num(sp["type_a"], "space.type_a");
    if (spec.space.type_a < 0.0) bad_field("space.type_a", "must be nonnegative");
    if (!sp.contains("zeros")) bad_field("space.zeros", "required for kind \"hb\"");
    spec.space.zeros = get_points(sp["zeros"], "space.zeros");
    for (std::size_t i = 0; i < spec.space.zeros.size(); ++i) {
      for (std::size_t j = i + 1; j < spec.space.zeros.size(); ++j) {
        if (spec.space.zeros[i] == spec.space.zeros[j]) {
          bad_field("space.zeros", "zeros must be pairwise distinct");
        }
      }
    }
    spec.space.phase = sp.contains("phase") ? get_num(sp["phase"], "space.phase") : 0.0;
  } else {
    bad_field("space.kind", "must be \"pw\" or \"hb\"");
  }

  if (!doc.contains("lambda") || !doc["lambda"].is_object()) {
    bad_field("lambda", "required object");
  }
  const njson& lam = doc["lambda"];
  const bool has_explicit = lam.contains("explicit");
  const bool has_gen = lam.contains("generator");
  if (has_explicit == has_gen) {
    bad_field("lambda", "exactly one of \"explicit\" and \"generator\" is required");
  }
  if (has_explicit) {
    spec.explicit_lambda = get_points(lam["explicit"], "lambda.explicit");
  } else {
    const njson& g = lam["generator"];
    if (!g.is_object()) bad_field("lambda.generator", "must be an object");
    GeneratorSpec gen;
    if (!g.contains("id") || !g["id"].is_string()) bad_field("lambda.generator.id", "required string");
    gen.id = g["id"].get<std::string>();
    if (gen.id != "integers" && gen.id != "harmonic_imaginary" &&
        gen.id != "perturbed_integers") {
      bad_field("lambda.generator.id", "unknown generator \"" + gen.id + "\"");
    }
    if (!g.contains("radius")) bad_field("lambda.generator.radius", "required number");
    gen.radius = get_num(g["radius"], "lambda.generator.radius");
    if (!(gen.radius > 0.0) || !std::isfinite(gen.radius)) {
      bad_field("lambda.generator.radius", "must be finite and positive");
    }
    if (g.contains("params")) {
      const njson& gp = g["params"];
      if (!gp.is_object()) bad_field("lambda.generator.params", "must be an object");
      if (gp.contains("exclude")) {
        if (!gp["exclude"].is_array()) bad_field("lambda.generator.params.exclude", "must be an array");
        for (const auto& e : gp["exclude"]) {
          gen.exclude.push_back(get_num(e, "lambda.generator.params.exclude"));
        }
      }
      if (gp.contains("delta")) gen.delta = get_num(gp["delta"], "lambda.generator.params.delta");
    }
    spec.generator = std::move(gen);
  }

  if (doc.contains("params")) {
    const njson& pp = doc["params"];
    if (!pp.is_object()) bad_field("params", "must be an object");
    if (pp.contains("anchor_window")) {
      spec.params.anchor_window = get_interval(pp["anchor_window"], "params.anchor_window");
    }
    if (pp.contains("scan_window")) {
      spec.params.scan_window = get_interval(pp["scan_window"], "params.scan_window");
    }
    if (pp.contains("step")) spec.params.step = get_num(pp["step"], "params.step");
    if (!(spec.params.step > 0.0)) bad_field("params.step", "must be positive");
    if (pp.contains("tol")) spec.params.tol = get_num(pp["tol"], "params.tol");
    if (!(spec.params.tol > 0.0)) bad_field("params.tol", "must be positive");
    if (pp.contains("ridge")) spec.params.ridge = get_num(pp["ridge"], "params.ridge");
    if (!(spec.params.ridge > 0.0)) bad_field("params.ridge", "must be positive");
    if (pp.contains("trunc_n")) {
      if (!pp["trunc_n"].is_number_integer()) bad_field("params.trunc_n", "must be an integer");
      spec.params.trunc_n = pp["trunc_n"].get<long>();
      if (spec.params.trunc_n < 0) bad_field("params.trunc_n", "must be nonnegative");
    }
    if (pp.contains("seed")) {
      if (!pp["seed"].is_number_integer()) bad_field("params.seed", "must be an integer");
      spec.params.seed = pp["seed"].get<long>();
    }
  }
  return spec;
}

AmbientSpace make_ambient(const ProblemSpec& spec) {
  if (spec.space.kind == "pw") {
    SampleParams sp;
    if (spec.params.trunc_n > 0) sp.half_range = spec.params.trunc_n;
    return AmbientSpace::paley_wiener(sp);
  }
  StructureFunction e(spec.space.type_a, spec.space.zeros, spec.space.phase);
  QuadParams qp;
  if (spec.params.trunc_n > 0) qp.half_width = static_cast<double>(spec.params.trunc_n);
  return AmbientSpace::weighted(std::move(e), qp);
}

NodeSequence make_lambda(const ProblemSpec& spec) {
  if (spec.explicit_lambda) {
    NodeSequence seq = NodeSequence::exact(*spec.explicit_lambda);
    seq.validate();
    return seq;
  }
  const GeneratorSpec& gen = *spec.generator;
  const long r = static_cast<long>(std::floor(gen.radius));
  auto excluded = [&](double n) {
    return std::find(gen.exclude.begin(), gen.exclude.end(), n) != gen.exclude.end();
  };
  std::vector<cplx> nodes;
  if (gen.id == "integers") {
    for (long n = -r; n <= r; ++n) {
      if (!excluded(static_cast<double>(n))) nodes.emplace_back(static_cast<double>(n), 0.0);
    }
  } else if (gen.id == "harmonic_imaginary") {
    for (long n = 1; n <= r; ++n) nodes.emplace_back(0.0, -static_cast<double>(n));
  } else if (gen.id == "perturbed_integers") {
    std::mt19937_64 rng(static_cast<std::uint64_t>(spec.params.seed));
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (long n = -r; n <= r; ++n) {
      const double off = gen.delta * u(rng);
      if (excluded(static_cast<double>(n))) continue;
      nodes.emplace_back(static_cast<double>(n) + off, 0.0);
    }
  } else {
    bad_field("lambda.generator.id", "unknown generator \"" + gen.id + "\"");
  }
  NodeSequence seq = NodeSequence::truncated(std::move(nodes), gen.radius);
  seq.validate();
  return seq;
}

CompletionParams make_completion_params(const ProblemSpec& spec) {
  CompletionParams cp;
  cp.anchor_window = spec.params.anchor_window;
  cp.scan_window = spec.params.scan_window;
  cp.scan_step = spec.params.step;
  cp.zero_tol = spec.params.tol;
  return cp;
}

namespace {

struct StageTimer {
  std::vector<std::pair<std::string, double>>& sink;
  std::string name;
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

  ~StageTimer() {
    const auto dt = std::chrono::steady_clock::now() - t0;
    sink.emplace_back(name, std::chrono::duration<double, std::milli>(dt).count());
  }
};

std::vector<KappaCombination> section_probes(const std::vector<double>& s) {
  std::vector<KappaCombination> probes;
  for (std::size_t i = 0; i < s.size() && i < 4; ++i) {
    probes.push_back({{cplx(s[i], 0.0)}, {cplx(1.0, 0.0)}});
  }
  if (s.size() >= 2) {
    probes.push_back({{cplx(s[0], 0.0), cplx(s[1], 0.0)}, {cplx(0.7, 0.0), cplx(0.0, 0.3)}});
  }
  return probes;
}

void fill_verification(ResultBundle& b, const ProblemSpec& spec, const RestrictedSpace& rs,
                       const std::vector<double>& s, double anchor) {
  {
    StageTimer t{b.timings_ms, "prop1"};
    NodeSequence uni;
    uni.nodes = rs.lambda();
    for (double v : s) uni.nodes.emplace_back(v, 0.0);
    Prop1Params pp;
    pp.window_radius = rs.nodes().truncation_radius.value_or(0.0);
    b.prop1 = prop1_check(rs.ambient(), uni, pp);
  }
  {
    StageTimer t{b.timings_ms, "minimality"};
    b.minimality = minimal_uniqueness(rs, s, anchor);
  }
  {
    StageTimer t{b.timings_ms, "parseval"};
    b.parseval = parseval_defect(rs, s, section_probes(s));
  }
  if (rs.ambient().finite_dimension()) {
    StageTimer t{b.timings_ms, "finite_dim_oracle"};
    b.rank = finite_dim_oracle(rs.ambient().structure(), NodeSequence::exact(rs.lambda()), s);
  }
  {
    StageTimer t{b.timings_ms, "completeness_trend"};
    b.trend_truncations = {50, 100, 200, 400};
    b.completeness_trend =
        completeness_residual(rs, s, cplx(0.3, 0.0), b.trend_truncations);
  }
  b.config_echo = spec.config_echo;
}

}  // namespace

ResultBundle run_complete(const ProblemSpec& spec) {
  ResultBundle b;
  AmbientSpace amb = make_ambient(spec);
  NodeSequence lam = make_lambda(spec);
  std::optional<RestrictedSpace> rs;
  {
    StageTimer t{b.timings_ms, "build"};
    rs = RestrictedSpace::build(std::move(amb), std::move(lam), 1e12, spec.params.ridge);
  }
  {
    StageTimer t{b.timings_ms, "complete"};
    b.completion = complete(*rs, make_completion_params(spec));
  }
  fill_verification(b, spec, *rs, b.completion.s_points, b.completion.anchor);
  return b;
}

ResultBundle run_verify(const ProblemSpec& spec, const std::vector<double>& s,
                        double anchor) {
  if (s.empty()) throw ValidationError("verify: S must be nonempty");
  ResultBundle b;
  b.verify_only = true;
  AmbientSpace amb = make_ambient(spec);
  NodeSequence lam = make_lambda(spec);
  for (double v : s) {
    if (lam.distance_to(cplx(v, 0.0)) < 1e-9) {
      std::ostringstream os;
      os << "verify: S point " << v << " coincides with a node of Lambda";
      throw ValidationError(os.str());
    }
  }
  std::optional<RestrictedSpace> rs;
  {
    StageTimer t{b.timings_ms, "build"};
    rs = RestrictedSpace::build(std::move(amb), std::move(lam), 1e12, spec.params.ridge);
  }
  b.completion.anchor = anchor;
  b.completion.s_points = s;
  for (double v : s) b.completion.kappa_diag.push_back(rs->kappa_diag(v));
  b.completion.diagnostics.anchor_diag = rs->kappa_diag(anchor);
  const std::size_t m = s.size();
  b.completion.diagnostics.orth_residual.assign(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      const double denom = std::sqrt(std::max(b.completion.kappa_diag[i], 1e-300) *
                                     std::max(b.completion.kappa_diag[j], 1e-300));
      const double r = std::abs(rs->kappa(cplx(s[i], 0.0), cplx(s[j], 0.0))) / denom;
      b.completion.diagnostics.orth_residual[i] =
          std::max(b.completion.diagnostics.orth_residual[i], r);
      b.completion.diagnostics.orth_residual[j] =
          std::max(b.completion.diagnostics.orth_residual[j], r);
      b.completion.diagnostics.orth_max_residual =
          std::max(b.completion.diagnostics.orth_max_residual, r);
    }
  }
  fill_verification(b, spec, *rs, s, anchor);
  return b;
}

namespace {

std::string fmt_double(double v) {
  if (!std::isfinite(v)) throw NumericalError("non-finite numeric field in result");
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void emit_value(const njson& j, std::string& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  const std::string pad2(static_cast<std::size_t>(indent) + 2, ' ');
  switch (j.type()) {
    case njson::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad2 + nlohmann::json(it.key()).dump() + ": ";
        emit_value(it.value(), out, indent + 2);
      }
      out += "\n" + pad + "}";
      return;
    }
    case njson::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      const bool scalars = std::all_of(j.begin(), j.end(), [](const njson& e) {
        return !e.is_structured();
      });
      if (scalars) {
        out += "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out += ", ";
          emit_value(j[i], out, indent);
        }
        out += "]";
      } else {
        out += "[\n";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out += ",\n";
          out += pad2;
          emit_value(j[i], out, indent + 2);
        }
        out += "\n" + pad + "]";
      }
      return;
    }
    case njson::value_t::string:
      out += nlohmann::json(j.get<std::string>()).dump();
      return;
    case njson::value_t::boolean:
      out += j.get<bool>() ? "true" : "false";
      return;
    case njson::value_t::number_integer:
      out += std::to_string(j.get<long long>());
      return;
    case njson::value_t::number_unsigned:
      out += std::to_string(j.get<unsigned long long>());
      return;
    case njson::value_t::number_float:
      out += fmt_double(j.get<double>());
      return;
    case njson::value_t::null:
    default:
      out += "null";
      return;
  }
}

std::string emit_doc(const njson& doc) {
  std::string out;
  emit_value(doc, out, 0);
  out += "\n";
  return out;
}

njson num_array(const std::vector<double>& v) {
  njson a = njson::array();
  for (double x : v) a.push_back(x);
  return a;
}

std::string iso_now() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

std::string bundle_to_json(const ResultBundle& b) {
  njson doc;
  doc["schema"] = "kcomp-result-v1";
  doc["mode"] = b.verify_only ? "verify" : "complete";
  doc["anchor"] = b.completion.anchor;
  doc["s_points"] = num_array(b.completion.s_points);
  doc["kappa_diag"] = num_array(b.completion.kappa_diag);

  njson diag;
  diag["anchor_diag"] = b.completion.diagnostics.anchor_diag;
  diag["parseval_guard_defect"] = b.completion.diagnostics.parseval_defect;
  diag["orth_max_residual"] = b.completion.diagnostics.orth_max_residual;
  diag["orth_residual"] = num_array(b.completion.diagnostics.orth_residual);
  diag["reanchored"] = b.completion.diagnostics.reanchored;
  diag["window_expansions"] = b.completion.diagnostics.window_expansions;
  diag["scan_window"] = njson::array({b.completion.diagnostics.scan_window.first,
                                      b.completion.diagnostics.scan_window.second});
  diag["anomalies"] = b.completion.diagnostics.anomalies;
  diag["warnings"] = b.completion.diagnostics.warnings;
  doc["diagnostics"] = std::move(diag);

  njson ver;
  {
    njson p1;
    p1["cond1_converged"] = b.prop1.cond1_converged;
    njson c2 = njson::array();
    for (const auto& it : b.prop1.cond2) {
      njson e;
      e["mu"] = njson::array({it.mu.real(), it.mu.imag()});
      e["margin"] = it.margin;
      e["pass"] = it.pass;
      c2.push_back(std::move(e));
    }
    p1["cond2"] = std::move(c2);
    p1["cond2_pass"] = b.prop1.cond2_pass;
    njson c3;
    c3["probe_count"] = b.prop1.cond3_probe_count;
    c3["violation"] = b.prop1.cond3_violation;
    c3["probe_hit"] = b.prop1.cond3_probe_hit;
    c3["label"] = b.prop1.cond3_label;
    p1["cond3"] = std::move(c3);
    p1["windowed"] = b.prop1.windowed;
    p1["pass"] = b.prop1.pass();
    ver["prop1"] = std::move(p1);
  }
  {
    njson mi;
    mi["uniqueness_residual"] = b.minimality.uniqueness_residual;
    mi["uniqueness_verdict"] = b.minimality.uniqueness_verdict;
    njson ws = njson::array();
    for (const auto& w : b.minimality.witnesses) {
      njson e;
      e["s0"] = w.s0;
      e["value_at_s0"] = w.value_at_s0;
      e["max_off_value"] = w.max_off_value;
      e["pass"] = w.pass;
      ws.push_back(std::move(e));
    }
    mi["witnesses"] = std::move(ws);
    mi["minimality_pass"] = b.minimality.minimality_pass;
    ver["minimality"] = std::move(mi);
  }
  ver["parseval_defect"] = b.parseval;
  if (b.rank) {
    njson rk;
    rk["dim"] = b.rank->dim;
    rk["full_rank"] = b.rank->full_rank;
    njson loo = njson::array();
    for (int r : b.rank->leave_one_out) loo.push_back(r);
    rk["leave_one_out"] = std::move(loo);
    rk["complete_and_minimal"] = b.rank->complete_and_minimal;
    ver["rank_oracle"] = std::move(rk);
  }
  {
    njson tr;
    njson tn = njson::array();
    for (int t : b.trend_truncations) tn.push_back(t);
    tr["truncations"] = std::move(tn);
    tr["residuals"] = num_array(b.completeness_trend);
    ver["completeness_trend"] = std::move(tr);
  }
  doc["verification"] = std::move(ver);

  njson prov;
  prov["version"] = "0.1.0";
  prov["config_echo"] = b.config_echo;
  doc["provenance"] = std::move(prov);

  // All run-dependent content (wall-clock stamps and stage timings) lives
  // under "timestamps" so that repeated runs are byte-identical outside it.
  njson ts;
  ts["written"] = iso_now();
  njson tms;
  for (const auto& [name, ms] : b.timings_ms) tms[name] = ms;
  ts["timings_ms"] = std::move(tms);
  doc["timestamps"] = std::move(ts);

  return emit_doc(doc);
}

std::string bundle_to_csv(const ResultBundle& b) {
  std::string out = "index,s_point,kappa_diag,orth_residual,minimality_margin\n";
  for (std::size_t i = 0; i < b.completion.s_points.size(); ++i) {
    const double orth = i < b.completion.diagnostics.orth_residual.size()
                            ? b.completion.diagnostics.orth_residual[i]
                            : 0.0;
    double margin = 0.0;
    for (const auto& w : b.minimality.witnesses) {
      if (std::abs(w.s0 - b.completion.s_points[i]) < 1e-12) {
        margin = w.value_at_s0;
        break;
      }
    }
    out += std::to_string(i) + "," + fmt_double(b.completion.s_points[i]) + "," +
           fmt_double(b.completion.kappa_diag[i]) + "," + fmt_double(orth) + "," +
           fmt_double(margin) + "\n";
  }
  return out;
}

std::string canonical_json(const std::string& text) {
  njson doc;
  try {
    doc = njson::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("not valid JSON: ") + e.what());
  }
  return emit_doc(doc);
}

std::pair<std::vector<double>, double> parse_result_s(const std::string& text) {
  njson doc;
  try {
    doc = njson::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("result file is not valid JSON: ") + e.what());
  }
  if (!doc.contains("s_points") || !doc["s_points"].is_array()) {
    throw ValidationError("result file has no \"s_points\" array");
  }
  std::vector<double> s;
  for (const auto& v : doc["s_points"]) {
    if (!v.is_number()) throw ValidationError("\"s_points\" entries must be numbers");
    s.push_back(v.get<double>());
  }
  if (!doc.contains("anchor") || !doc["anchor"].is_number()) {
    throw ValidationError("result file has no numeric \"anchor\"");
  }
  return {std::move(s), doc["anchor"].get<double>()};
}

void write_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw NumericalError("cannot open " + tmp + " for writing");
    f << content;
    if (!f.good()) throw NumericalError("short write to " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    throw NumericalError("cannot rename " + tmp + " to " + path);
  }
}

std::vector<std::string> demo_names() {
  return {"pw-one-gap", "pw-three-gaps", "findim-2", "findim-6", "harmonic-reject"};
}

std::string demo_spec_text(const std::string& name) {
  if (name == "pw-one-gap") {
    return R"({
  "space": {"kind": "pw"},
  "lambda": {"generator": {"id": "integers", "params": {"exclude": [0]}, "radius": 500}},
  "params": {"anchor_window": [-5, 5], "step": 0.1, "tol": 1e-10, "seed": 1}
}
)";
  }
  if (name == "pw-three-gaps") {
    return R"({
  "space": {"kind": "pw"},
  "lambda": {"generator": {"id": "integers", "params": {"exclude": [-1, 0, 1]}, "radius": 500}},
  "params": {"anchor_window": [-5, 5], "step": 0.1, "tol": 1e-10, "seed": 1}
}
)";
  }
  if (name == "findim-2") {
    return R"({
  "space": {"kind": "hb", "type_a": 0, "zeros": [[0, -1], [0.5, -1]], "phase": 0},
  "lambda": {"explicit": [[0, 1]]},
  "params": {"anchor_window": [-3, 3], "step": 0.1, "tol": 1e-10, "seed": 1}
}
)";
  }
  if (name == "findim-6") {
    return R"({
  "space": {"kind": "hb", "type_a": 0, "zeros": [[-0.75, -1], [-0.45, -0.8], [-0.15, -1.2], [0.15, -0.9], [0.45, -1.1], [0.75, -1]], "phase": 0},
  "lambda": {"explicit": [[0, 1], [0.3, 0.8], [-0.4, 1.2]]},
  "params": {"anchor_window": [-4, 4], "step": 0.1, "tol": 1e-10, "seed": 1}
}
)";
  }
  if (name == "harmonic-reject") {
    return R"({
  "space": {"kind": "pw"},
  "lambda": {"generator": {"id": "harmonic_imaginary", "params": {}, "radius": 100000}},
  "params": {"step": 0.1, "tol": 1e-10, "seed": 1}
}
)";
  }
  throw ValidationError("unknown demo \"" + name + "\"");
}

}  // namespace kcomp
