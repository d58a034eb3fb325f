#include "bisheaf/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <regex>
#include <set>
#include <sstream>

namespace bisheaf {
namespace {

using json_exception = nlohmann::json::exception;

template <class F>
auto stage(const char* name, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    throw Error(e.kind(), std::string(name) + ": " + e.what());
  }
}

void check_keys(const ordered_json& j, const char* what, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) invalid_config(std::string(what) + " must be a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* k) { return it.key() == k; }))
      invalid_config("unknown " + std::string(what) + " field '" + it.key() + "'");
  }
}

int get_int(const ordered_json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_number_integer()) invalid_config(std::string(key) + " must be an integer");
  return v.get<int>();
}

double get_number(const ordered_json& v, const std::string& what) {
  if (!v.is_number()) invalid_config(what + " must be a number");
  return v.get<double>();
}

std::vector<int> get_int_array(const ordered_json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return {};
  const auto& v = j.at(key);
  if (!v.is_array()) invalid_config(std::string(key) + " must be an array of integers");
  std::vector<int> out;
  for (const auto& e : v) {
    if (!e.is_number_integer()) invalid_config(std::string(key) + " must be an array of integers");
    out.push_back(e.get<int>());
  }
  return out;
}

Rational rational_from_json(const ordered_json& v) {
  if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
  if (v.is_number_float()) {
    double d = v.get<double>();
    if (!std::isfinite(d)) invalid_config("germ coefficient must be finite");
    return Rational::from_double(d);
  }
  if (v.is_string()) return Rational::parse(v.get<std::string>());
  invalid_config("germ coefficient must be an integer, a decimal or a \"p/q\" string");
}

ordered_json rational_to_json(const Rational& r) {
  if (r.den() == 1) return r.num();
  return r.to_string();
}

ordered_json index_json(ClassIndex i) { return ordered_json::array({i.mu, i.m}); }

ordered_json optional_class(const std::optional<SingularityClass>& c) {
  return c ? to_json(*c) : ordered_json(nullptr);
}

ordered_json pair_json(const std::optional<SemimodulePair>& p) {
  if (!p) return nullptr;
  ordered_json j;
  j["pairs"] = p->pair_count();
  j["right"] = to_json(p->right);
  j["left"] = to_json(p->left);
  return j;
}

ordered_json level_json(const LevelRecord& rec) {
  ordered_json j;
  j["label"] = to_string(rec.label);
  ordered_json weil = ordered_json::array();
  for (const auto& d : rec.weil_side) {
    ordered_json w;
    w["mu"] = d.index.mu;
    w["m"] = d.index.m;
    w["right_degree"] = d.right_degree;
    w["left_degree"] = d.left_degree;
    weil.push_back(std::move(w));
  }
  j["weil_side"] = std::move(weil);
  ordered_json cusp;
  cusp["reduced"] = pair_json(rec.cusp_side.reduced);
  cusp["orthogonal"] = pair_json(rec.cusp_side.orthogonal);
  cusp["pairs"] = rec.cusp_side.pair_count();
  j["cuspidal_side"] = std::move(cusp);
  j["bijection"] = rec.bijection_holds();
  return j;
}

ordered_json section_rows(const LevelEntry& raw, const LevelEntry& desing) {
  ordered_json rows = ordered_json::array();
  auto add = [&](const Bisemisheaf& b, const Bisemisheaf& d, const char* part) {
    for (ClassIndex i : b.index_set()) {
      ordered_json row;
      row["mu"] = i.mu;
      row["m"] = i.m;
      row["part"] = part;
      row["nature"] = to_string(b.nature());
      row["dims"] = b.left().at(i).dims;
      row["right_germ"] = b.right().at(i).germ.to_string();
      row["left_germ"] = b.left().at(i).germ.to_string();
      row["desingularized"] = d.left().at(i).germ.to_string();
      row["class"] = to_string(classify_germ(d.left().at(i).germ).name);
      rows.push_back(std::move(row));
    }
  };
  add(raw.space, desing.space, "space");
  add(raw.time, desing.time, "time");
  return rows;
}

ordered_json level_table(const Report& r) {
  ordered_json table = ordered_json::array();
  for (std::size_t k = 0; k < r.stack.levels.size(); ++k) {
    const LevelEntry& e = r.stack.levels[k];
    ordered_json j;
    j["label"] = to_string(e.label);
    j["singular"] = e.singular;
    j["space_classes"] = e.space.size();
    j["time_classes"] = e.time.size();
    ordered_json covers = ordered_json::array();
    for (const auto& [lo, up] : e.covers) covers.push_back(ordered_json::array({index_json(lo), index_json(up)}));
    j["covers"] = std::move(covers);
    ordered_json coverage = ordered_json::array();
    for (const auto& [i, f] : e.coverage) {
      ordered_json c;
      c["mu"] = i.mu;
      c["m"] = i.m;
      c["fraction"] = f;
      coverage.push_back(std::move(c));
    }
    j["coverage"] = std::move(coverage);
    j["sections"] = section_rows(e, r.desingularized[k]);
    table.push_back(std::move(j));
  }
  return table;
}

ordered_json amplitude_json(const AmplitudeSpec& a) {
  switch (a.kind) {
    case AmplitudeSpec::Kind::Unit:
      return "unit";
    case AmplitudeSpec::Kind::Mu:
      return "mu";
    case AmplitudeSpec::Kind::Table: {
      ordered_json j;
      ordered_json rows = ordered_json::array();
      for (const auto& e : a.table) {
        ordered_json row;
        row["mu"] = e.index.mu;
        row["m"] = e.index.m;
        row["amplitude"] = e.amplitude;
        rows.push_back(std::move(row));
      }
      j["table"] = std::move(rows);
      j["default"] = a.fallback;
      return j;
    }
  }
  return nullptr;
}

AmplitudeSpec amplitude_from_json(const ordered_json& j) {
  AmplitudeSpec a;
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s == "unit") return a;
    if (s == "mu") {
      a.kind = AmplitudeSpec::Kind::Mu;
      return a;
    }
    invalid_config("amplitude_rule must be \"unit\", \"mu\" or a table object");
  }
  check_keys(j, "amplitude_rule", {"table", "default"});
  a.kind = AmplitudeSpec::Kind::Table;
  if (j.contains("default")) a.fallback = get_number(j.at("default"), "amplitude_rule.default");
  if (!j.contains("table") || !j.at("table").is_array()) invalid_config("amplitude_rule.table must be an array");
  for (const auto& row : j.at("table")) {
    check_keys(row, "amplitude table row", {"mu", "m", "amplitude"});
    AmplitudeEntry e;
    e.index.mu = get_int(row, "mu");
    e.index.m = row.contains("m") ? get_int(row, "m") : 1;
    e.amplitude = get_number(row.at("amplitude"), "amplitude");
    a.table.push_back(e);
  }
  return a;
}

bool good_amplitude(double r) { return std::isfinite(r) && r >= 0.0; }

double variance(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double acc = 0.0;
  for (double x : v) acc += (x - mean) * (x - mean);
  return acc / static_cast<double>(v.size());
}

std::string join_labels(const std::vector<Level>& levels) {
  std::string out;
  for (std::size_t k = 0; k < levels.size(); ++k) out += (k ? ", " : "") + to_string(levels[k]);
  return out;
}

LevelEntry desingularize_entry(const LevelEntry& e) {
  LevelEntry d = e;
  d.time = desingularize(e.time);
  d.space = desingularize(e.space);
  d.singular = false;
  return d;
}

}  // namespace

AmplitudeRule AmplitudeSpec::rule() const {
  switch (kind) {
    case Kind::Unit:
      return unit_amplitude();
    case Kind::Mu:
      return [](ClassIndex i) { return static_cast<double>(i.mu); };
    case Kind::Table: {
      std::map<ClassIndex, double> lookup;
      for (const auto& e : table) lookup[e.index] = e.amplitude;
      double fb = fallback;
      return [lookup = std::move(lookup), fb](ClassIndex i) {
        auto it = lookup.find(i);
        return it == lookup.end() ? fb : it->second;
      };
    }
  }
  return unit_amplitude();
}

void PipelineConfig::validate() const {
  if (scenario && !is_catalogue(*scenario))
    invalid_config("scenario must be none or a catalogue class, got " + to_string(*scenario));
  if (orth_dims != 2 && orth_dims != 3) invalid_config("orth_dims must be 2 or 3");
  if (section_dims && *section_dims != 1 && *section_dims != 2) invalid_config("section_dims must be 1 or 2");
  if (!(blowup_fraction > 0.0 && blowup_fraction <= 1.0)) invalid_config("blowup_fraction must lie in (0, 1]");
  if (output_format != "json") invalid_config("output format must be json");
  if (!good_amplitude(amplitude.fallback)) invalid_config("amplitude default must be finite and >= 0");
  for (const auto& e : amplitude.table)
    if (!good_amplitude(e.amplitude)) invalid_config("amplitude table values must be finite and >= 0");
  if (covering_depths) {
    auto [mg, m] = *covering_depths;
    if (mg < 1 || mg > tower.depth || m < 1 || m > tower.depth)
      invalid_config("covering depths must lie in [1, tower depth]");
    if (m > mg) invalid_config("the M covering depth cannot exceed the MG covering depth");
  }
  if (germ && germ->nvars() == 2 && effective_section_dims() == 1)
    invalid_config("a two-variable germ needs section_dims 2");
}

int PipelineConfig::effective_section_dims() const {
  if (section_dims) return *section_dims;
  if (scenario && catalogue_class(*scenario).corank == 2) return 2;
  return 1;
}

ReducePredicate parse_reduce_predicate(const std::string& rule, const Tower& tower) {
  static const std::regex cmp(R"(^\s*(mu|m)\s*(<=|>=|==|!=|<|>)\s*(-?\d+|H|D)\s*$)");
  static const std::regex parity(R"(^\s*mu\s+(odd|even)\s*$)");
  static const std::regex constant(R"(^\s*(all|none)\s*$)");
  std::smatch m;
  if (std::regex_match(rule, m, constant)) {
    bool v = m[1] == "all";
    return [v](ClassIndex) { return v; };
  }
  if (std::regex_match(rule, m, parity)) {
    int want = m[1] == "odd" ? 1 : 0;
    return [want](ClassIndex i) { return i.mu % 2 == want; };
  }
  if (!std::regex_match(rule, m, cmp)) invalid_config("unrecognized reduce predicate '" + rule + "'");
  bool on_mu = m[1] == "mu";
  std::string op = m[2];
  int k = 0;
  if (m[3] == "H") {
    k = (tower.depth() + 1) / 2;
  } else if (m[3] == "D") {
    k = tower.depth();
  } else {
    try {
      k = std::stoi(m[3]);
    } catch (const std::out_of_range&) {
      invalid_config("reduce predicate bound out of range in '" + rule + "'");
    }
  }
  return [on_mu, op, k](ClassIndex i) {
    int v = on_mu ? i.mu : i.m;
    if (op == "<=") return v <= k;
    if (op == "<") return v < k;
    if (op == ">=") return v >= k;
    if (op == ">") return v > k;
    if (op == "==") return v == k;
    return v != k;
  };
}

TowerConfig tower_config_from_json(const ordered_json& j) {
  try {
    check_keys(j, "tower", {"quantum_modulus", "offset", "depth", "multiplicity", "complex_multiplicity"});
    if (!j.contains("quantum_modulus") || !j.contains("depth"))
      invalid_config("tower needs quantum_modulus and depth");
    TowerConfig c;
    if (!j.at("quantum_modulus").is_number_integer()) invalid_config("quantum_modulus must be an integer");
    c.quantum_modulus = j.at("quantum_modulus").get<std::int64_t>();
    if (j.contains("offset")) {
      if (!j.at("offset").is_number_integer()) invalid_config("offset must be an integer");
      c.offset = j.at("offset").get<std::int64_t>();
    }
    c.depth = get_int(j, "depth");
    c.multiplicity = get_int_array(j, "multiplicity");
    c.complex_multiplicity = get_int_array(j, "complex_multiplicity");
    return c;
  } catch (const json_exception& e) {
    invalid_config(std::string("tower: ") + e.what());
  }
}

ordered_json to_json(const TowerConfig& c) {
  ordered_json j;
  j["quantum_modulus"] = c.quantum_modulus;
  j["offset"] = c.offset;
  j["depth"] = c.depth;
  j["multiplicity"] = c.multiplicity;
  j["complex_multiplicity"] = c.complex_multiplicity;
  return j;
}

ordered_json describe_tower(const Tower& t) {
  ordered_json j;
  j["quantum_modulus"] = t.modulus();
  j["offset"] = t.offset();
  j["depth"] = t.depth();
  j["class_count"] = t.class_count();
  ordered_json places = ordered_json::array();
  for (int mu = 1; mu <= t.depth(); ++mu) {
    ordered_json p;
    p["mu"] = mu;
    p["multiplicity"] = t.multiplicity(mu);
    p["real_degree"] = t.real_degree({mu, 1});
    p["complex_multiplicity"] = t.complex_multiplicity(mu);
    p["complex_degree"] = t.complex_degree(mu);
    places.push_back(std::move(p));
  }
  j["places"] = std::move(places);
  ordered_json classes = ordered_json::array();
  for (ClassIndex i : class_representatives(t)) classes.push_back(index_json(i));
  j["class_representatives"] = std::move(classes);
  return j;
}

Germ germ_from_json(const ordered_json& j) {
  try {
    if (j.is_array()) {
      Germ g(1);
      for (std::size_t k = 0; k < j.size(); ++k) g.add_term({static_cast<int>(k), 0}, rational_from_json(j[k]));
      return g;
    }
    check_keys(j, "germ", {"nvars", "coeffs", "max_degree", "text"});
    int nvars = j.contains("nvars") ? get_int(j, "nvars") : 1;
    if (nvars != 1 && nvars != 2) invalid_config("germ nvars must be 1 or 2");
    int maxdeg = j.contains("max_degree") ? get_int(j, "max_degree") : Germ::kDefaultMaxDegree;
    if (maxdeg < 0) invalid_config("germ max_degree must be >= 0");
    Germ g(nvars, maxdeg);
    if (!j.contains("coeffs") || !j.at("coeffs").is_array()) invalid_config("germ needs a coeffs array");
    const auto& coeffs = j.at("coeffs");
    if (nvars == 1 && std::all_of(coeffs.begin(), coeffs.end(), [](const auto& c) { return !c.is_array(); })) {
      for (std::size_t k = 0; k < coeffs.size(); ++k)
        g.add_term({static_cast<int>(k), 0}, rational_from_json(coeffs[k]));
      return g;
    }
    for (const auto& term : coeffs) {
      if (!term.is_array() || term.size() != 2 || !term[0].is_array())
        invalid_config("germ coeffs entries must be [[exponents], value]");
      const auto& ex = term[0];
      if (ex.size() != static_cast<std::size_t>(nvars)) invalid_config("exponent tuple length must equal nvars");
      Exponent e{0, 0};
      for (int v = 0; v < nvars; ++v) {
        if (!ex[v].is_number_integer() || ex[v].get<int>() < 0)
          invalid_config("exponents must be non-negative integers");
        e[v] = ex[v].get<int>();
      }
      g.add_term(e, g.coefficient(e) + rational_from_json(term[1]));
    }
    return g;
  } catch (const json_exception& e) {
    invalid_config(std::string("germ: ") + e.what());
  }
}

ordered_json to_json(const Germ& g) {
  ordered_json j;
  j["nvars"] = g.nvars();
  j["text"] = g.to_string();
  ordered_json coeffs = ordered_json::array();
  for (const auto& [e, c] : g.terms()) {
    ordered_json ex = g.nvars() == 1 ? ordered_json::array({e[0]}) : ordered_json::array({e[0], e[1]});
    coeffs.push_back(ordered_json::array({ex, rational_to_json(c)}));
  }
  j["coeffs"] = std::move(coeffs);
  return j;
}

PipelineConfig pipeline_config_from_json(const ordered_json& j) {
  try {
    check_keys(j, "config",
               {"tower", "quantum_modulus", "offset", "depth", "multiplicity", "complex_multiplicity", "scenario",
                "reduce_predicate", "orth_dims", "amplitude_rule", "covering_depths", "even_class_convention",
                "section_dims", "germ", "blowup_fraction", "output"});
    PipelineConfig c;
    if (j.contains("tower")) {
      c.tower = tower_config_from_json(j.at("tower"));
    } else {
      ordered_json t = ordered_json::object();
      for (const char* k : {"quantum_modulus", "offset", "depth", "multiplicity", "complex_multiplicity"})
        if (j.contains(k)) t[k] = j.at(k);
      c.tower = tower_config_from_json(t);
    }
    if (j.contains("scenario") && !j.at("scenario").is_null()) {
      if (!j.at("scenario").is_string()) invalid_config("scenario must be a string or null");
      std::string s = j.at("scenario").get<std::string>();
      if (s != "none") c.scenario = parse_singularity(s);
    }
    if (j.contains("reduce_predicate")) {
      if (!j.at("reduce_predicate").is_string()) invalid_config("reduce_predicate must be a string");
      c.reduce_predicate = j.at("reduce_predicate").get<std::string>();
    }
    if (j.contains("orth_dims")) c.orth_dims = get_int(j, "orth_dims");
    if (j.contains("amplitude_rule")) c.amplitude = amplitude_from_json(j.at("amplitude_rule"));
    if (j.contains("covering_depths") && !j.at("covering_depths").is_null()) {
      const auto& d = j.at("covering_depths");
      if (!d.is_array() || d.size() != 2 || !d[0].is_number_integer() || !d[1].is_number_integer())
        invalid_config("covering_depths must be a pair of integers");
      c.covering_depths = std::pair(d[0].get<int>(), d[1].get<int>());
    }
    if (j.contains("even_class_convention")) {
      if (!j.at("even_class_convention").is_boolean()) invalid_config("even_class_convention must be a boolean");
      c.even_class_convention = j.at("even_class_convention").get<bool>();
    }
    if (j.contains("section_dims") && !j.at("section_dims").is_null()) {
      const auto& d = j.at("section_dims");
      if (!(d.is_string() && d.get<std::string>() == "auto")) c.section_dims = get_int(j, "section_dims");
    }
    if (j.contains("germ") && !j.at("germ").is_null()) c.germ = germ_from_json(j.at("germ"));
    if (j.contains("blowup_fraction")) c.blowup_fraction = get_number(j.at("blowup_fraction"), "blowup_fraction");
    if (j.contains("output") && !j.at("output").is_null()) {
      const auto& o = j.at("output");
      check_keys(o, "output", {"path", "format"});
      if (o.contains("path")) c.output_path = o.at("path").get<std::string>();
      if (o.contains("format")) c.output_format = o.at("format").get<std::string>();
    }
    c.validate();
    return c;
  } catch (const json_exception& e) {
    invalid_config(std::string("config: ") + e.what());
  }
}

ordered_json to_json(const PipelineConfig& c) {
  ordered_json j;
  j["tower"] = to_json(c.tower);
  j["scenario"] = c.scenario ? ordered_json(to_string(*c.scenario)) : ordered_json(nullptr);
  j["reduce_predicate"] = c.reduce_predicate;
  j["orth_dims"] = c.orth_dims;
  j["amplitude_rule"] = amplitude_json(c.amplitude);
  j["covering_depths"] = c.covering_depths
                             ? ordered_json::array({c.covering_depths->first, c.covering_depths->second})
                             : ordered_json(nullptr);
  j["even_class_convention"] = c.even_class_convention;
  j["section_dims"] = c.effective_section_dims();
  j["germ"] = c.germ ? to_json(*c.germ) : ordered_json(nullptr);
  j["blowup_fraction"] = c.blowup_fraction;
  ordered_json out;
  out["path"] = c.output_path;
  out["format"] = c.output_format;
  j["output"] = std::move(out);
  return j;
}

ordered_json to_json(const SingularityClass& c) {
  ordered_json j;
  j["name"] = to_string(c.name);
  j["corank"] = c.corank;
  j["codim"] = c.codim;
  return j;
}

ordered_json to_json(const Unfolding& u) {
  ordered_json j;
  j["base"] = u.base.to_string();
  j["codim"] = u.codim;
  ordered_json params = ordered_json::array();
  for (const auto& p : u.parameters) {
    ordered_json pj;
    pj["name"] = p.name;
    pj["monomial"] = p.monomial.to_string();
    params.push_back(std::move(pj));
  }
  j["parameters"] = std::move(params);
  j["formula"] = u.to_string();
  return j;
}

ordered_json to_json(const EllipticSemimodule& esm) {
  ordered_json j;
  j["side"] = to_string(esm.side);
  j["source_level"] = to_string(esm.source_level);
  j["source_nature"] = to_string(esm.source_nature);
  ordered_json modes = ordered_json::array();
  for (const Mode& m : esm.modes) {
    ordered_json mj;
    mj["mu"] = m.mu;
    mj["m"] = m.m;
    mj["amplitude"] = m.amplitude;
    mj["sign"] = m.sign;
    mj["degree"] = m.degree;
    modes.push_back(std::move(mj));
  }
  j["modes"] = std::move(modes);
  return j;
}

EllipticSemimodule semimodule_from_json(const ordered_json& j) {
  try {
    EllipticSemimodule esm;
    const ordered_json* modes = &j;
    if (j.is_object()) {
      check_keys(j, "semimodule", {"side", "source_level", "source_nature", "modes"});
      if (j.contains("side")) {
        std::string s = j.at("side").get<std::string>();
        if (s != "Left" && s != "Right") invalid_config("semimodule side must be \"Left\" or \"Right\"");
        esm.side = s == "Left" ? Side::Left : Side::Right;
      }
      if (j.contains("source_level")) esm.source_level = parse_level(j.at("source_level").get<std::string>());
      if (j.contains("source_nature")) esm.source_nature = parse_nature(j.at("source_nature").get<std::string>());
      if (!j.contains("modes")) invalid_config("semimodule needs a modes array");
      modes = &j.at("modes");
    }
    if (!modes->is_array()) invalid_config("semimodule modes must be an array");
    if (modes->empty()) invalid_config("semimodule needs at least one mode");
    for (const auto& mj : *modes) {
      check_keys(mj, "mode", {"mu", "m", "amplitude", "sign", "degree"});
      Mode m;
      m.mu = get_int(mj, "mu");
      if (m.mu < 1) invalid_config("mode mu must be >= 1");
      if (mj.contains("m")) m.m = get_int(mj, "m");
      if (mj.contains("amplitude")) m.amplitude = get_number(mj.at("amplitude"), "mode amplitude");
      if (!good_amplitude(m.amplitude)) invalid_config("mode amplitude must be finite and >= 0");
      if (mj.contains("sign")) m.sign = get_int(mj, "sign");
      if (m.sign != 1 && m.sign != -1) invalid_config("mode sign must be +1 or -1");
      if (mj.contains("degree")) m.degree = mj.at("degree").get<std::int64_t>();
      esm.modes.push_back(m);
    }
    return esm;
  } catch (const json_exception& e) {
    invalid_config(std::string("semimodule: ") + e.what());
  }
}

bool Report::passed() const {
  return std::all_of(diagnostics.begin(), diagnostics.end(), [](const Diagnostic& d) { return d.passed; });
}

Report run_pipeline(const PipelineConfig& config) {
  stage("config", [&] { config.validate(); return 0; });
  Report report;
  report.config = config;

  auto tower = stage("tower", [&] { return std::make_shared<const Tower>(build_tower(config.tower)); });
  ReducePredicate reduce = stage("config", [&] { return parse_reduce_predicate(config.reduce_predicate, *tower); });
  const int dims = config.effective_section_dims();
  const Germ germ = config.germ.value_or(Germ::power(2));

  auto attach = [&](Side side) {
    Semisheaf s = attach_sections(tower, side, Level::ST, Nature::S, constant_template(germ));
    return dims == 2 && germ.nvars() == 1 ? glue_places(s) : s;
  };
  Bisemisheaf sections = stage("attach_sections", [&] { return tensor(attach(Side::Right), attach(Side::Left)); });
  Bisemisheaf base = stage("shift", [&] { return shift(sections); });

  std::optional<SingularityClass> sing;
  if (config.scenario) sing = catalogue_class(*config.scenario);
  LevelOptions opts;
  opts.reduce = reduce;
  opts.orth_dims = config.orth_dims;
  if (config.covering_depths) {
    opts.mg_depth = config.covering_depths->first;
    opts.m_depth = config.covering_depths->second;
  }
  opts.blowup.fraction = config.blowup_fraction;
  report.stack = stage("levels", [&] { return generate_levels(base, sing, opts); });

  report.desingularized = stage("desingularize", [&] {
    std::vector<LevelEntry> out;
    for (const LevelEntry& e : report.stack.levels) out.push_back(desingularize_entry(e));
    return out;
  });

  const AmplitudeRule rule = config.amplitude.rule();
  const CompactifyOptions copts{config.even_class_convention};
  report.correspondence = stage("compactify", [&] {
    Correspondence c;
    for (const LevelEntry& e : report.desingularized) {
      auto part = [](const Bisemisheaf& b) { return b.size() ? std::optional(b) : std::nullopt; };
      c.levels.push_back(level_record(e.label, part(e.space), part(e.time), rule, copts));
    }
    return c;
  });
  report.expansion = stage("expansion", [&] { return expansion_terms(report.stack.labels()); });

  auto& diags = report.diagnostics;
  const auto labels = report.stack.labels();
  {
    int want = level_count_for(sing);
    diags.push_back({"level_count", static_cast<int>(labels.size()) == want,
                     std::to_string(labels.size()) + " levels [" + join_labels(labels) + "], rule " +
                         std::to_string(report.stack.rule) + " expects " + std::to_string(want)});
  }
  for (const LevelRecord& rec : report.correspondence.levels) {
    diags.push_back({"bijection/" + to_string(rec.label), rec.bijection_holds(),
                     std::to_string(rec.weil_side.size()) + " Weil classes, " +
                         std::to_string(rec.cusp_side.pair_count()) + " cuspidal mode pairs"});
  }
  for (const LevelEntry& e : report.desingularized) {
    auto space = e.space.index_set();
    auto time = e.time.index_set();
    std::set<ClassIndex> all(space.begin(), space.end());
    bool ok = std::all_of(space.begin(), space.end(), reduce) &&
              std::none_of(time.begin(), time.end(), reduce);
    for (ClassIndex i : time) ok = ok && all.insert(i).second;
    diags.push_back({"partition/" + to_string(e.label), ok,
                     std::to_string(space.size()) + " reduced + " + std::to_string(time.size()) +
                         " orthogonal of " + std::to_string(all.size()) + " classes"});
  }
  {
    std::vector<double> xs;
    for (int k = 0; k < 32; ++k) xs.push_back(2.0 * k / 31.0);
    for (const LevelRecord& rec : report.correspondence.levels) {
      std::size_t checked = 0;
      double worst = 0.0;
      bool ok = true;
      for (const auto* part : {&rec.cusp_side.reduced, &rec.cusp_side.orthogonal}) {
        if (!*part) continue;
        const auto& right = (*part)->right.modes;
        const auto& left = (*part)->left.modes;
        for (const Mode& l : left) {
          auto it = std::find_if(right.begin(), right.end(),
                                 [&](const Mode& r) { return r.mu == l.mu && r.m == l.m; });
          if (it == right.end()) {
            ok = false;
            continue;
          }
          worst = std::max(worst, variance(bistring_modulus(*it, l, xs)));
          ++checked;
        }
      }
      ok = ok && worst < kOscillatorTolerance;
      std::ostringstream detail;
      detail << checked << " bistrings, max variance " << format_double(worst);
      diags.push_back({"oscillator/" + to_string(rec.label), ok, detail.str()});
    }
  }
  {
    bool ok = stage("diagram", [&] { return diagram_commutes(base, reduce, config.orth_dims, rule, copts); });
    diags.push_back({"diagram_commutes/ST", ok, "split-then-compactify vs compactify-then-split"});
  }
  for (const LevelEntry& e : report.desingularized) {
    std::size_t n = 0;
    bool ok = desingularize(e.time) == e.time && desingularize(e.space) == e.space;
    for (const Bisemisheaf* b : {&e.space, &e.time}) {
      for (Side s : {Side::Right, Side::Left}) {
        for (const auto& [i, sec] : b->side(s).sections()) {
          auto name = classify_germ(sec.germ).name;
          ok = ok && (name == SingularityName::Regular || name == SingularityName::Morse);
          ++n;
        }
      }
    }
    diags.push_back({"desingularized/" + to_string(e.label), ok,
                     std::to_string(n) + " sections Regular or Morse, idempotent"});
  }
  diags.push_back({"embedding", report.stack.embedding_holds(),
                   std::to_string(labels.size() > 0 ? labels.size() - 1 : 0) + " covering steps"});
  {
    bool detected = report.stack.levels.size() > 1 && report.stack.levels[1].singular;
    bool want = report.stack.rule == 3;
    diags.push_back({"resingularization", detected == want,
                     detected ? "cubic resingularization detected at MG" : "no resingularization"});
  }
  return report;
}

ordered_json to_json(const Report& r) {
  ordered_json j;
  j["config"] = to_json(r.config);
  j["tower"] = describe_tower(build_tower(r.config.tower));
  ordered_json labels = ordered_json::array();
  for (Level l : r.labels()) labels.push_back(to_string(l));
  j["levels"] = std::move(labels);
  j["level_rule"] = r.stack.rule;
  j["input_singularity"] = optional_class(r.stack.input);
  j["resingularization"] = optional_class(r.stack.resingularization);
  ordered_json corr = ordered_json::array();
  for (const auto& rec : r.correspondence.levels) corr.push_back(level_json(rec));
  j["correspondence"] = std::move(corr);
  j["level_table"] = level_table(r);
  j["expansion"] = emit_expansion(r.labels());
  ordered_json diags = ordered_json::array();
  for (const auto& d : r.diagnostics) {
    ordered_json dj;
    dj["name"] = d.name;
    dj["passed"] = d.passed;
    dj["detail"] = d.detail;
    diags.push_back(std::move(dj));
  }
  j["diagnostics"] = std::move(diags);
  j["trace"] = r.stack.trace;
  j["passed"] = r.passed();
  return j;
}

ordered_json levels_json(const Report& r) {
  ordered_json j;
  ordered_json labels = ordered_json::array();
  for (Level l : r.labels()) labels.push_back(to_string(l));
  j["levels"] = std::move(labels);
  j["level_rule"] = r.stack.rule;
  j["input_singularity"] = optional_class(r.stack.input);
  j["resingularization"] = optional_class(r.stack.resingularization);
  j["embedding"] = r.stack.embedding_holds();
  j["level_table"] = level_table(r);
  j["trace"] = r.stack.trace;
  return j;
}

std::string summary_text(const Report& r) {
  std::ostringstream os;
  os << "levels: " << join_labels(r.labels()) << " (rule " << r.stack.rule << ")\n";
  for (const auto& rec : r.correspondence.levels)
    os << to_string(rec.label) << ": " << rec.weil_side.size() << " Weil classes, " << rec.cusp_side.pair_count()
       << " cuspidal mode pairs\n";
  for (const auto& line : r.stack.trace) os << "trace: " << line << "\n";
  std::size_t passed = std::count_if(r.diagnostics.begin(), r.diagnostics.end(), [](const auto& d) { return d.passed; });
  os << "diagnostics: " << passed << "/" << r.diagnostics.size() << " passed\n";
  for (const auto& d : r.diagnostics)
    if (!d.passed) os << "FAILED " << d.name << ": " << d.detail << "\n";
  return os.str();
}

std::vector<LabeledTerm> expansion_terms(const std::vector<Level>& levels) {
  if (levels.empty()) invalid_config("expansion needs at least one level tag");
  std::vector<LevelPart> right, left;
  for (Level l : levels) {
    right.emplace_back(l, to_string(l) + "_R");
    left.emplace_back(l, to_string(l) + "_L");
  }
  return expand_sum_product(right, left);
}

ordered_json emit_expansion(const std::vector<Level>& levels) {
  auto terms = expansion_terms(levels);
  ordered_json j;
  ordered_json tags = ordered_json::array();
  for (Level l : levels) tags.push_back(to_string(l));
  j["levels"] = std::move(tags);
  ordered_json list = ordered_json::array();
  std::size_t free = 0;
  for (const auto& t : terms) {
    ordered_json tj;
    tj["right"] = to_string(t.right_label);
    tj["left"] = to_string(t.left_label);
    tj["kind"] = to_string(t.kind);
    tj["payload"] = t.payload;
    list.push_back(std::move(tj));
    if (t.kind == TermKind::Free) ++free;
  }
  j["terms"] = std::move(list);
  j["free"] = free;
  j["interaction"] = terms.size() - free;
  j["total"] = terms.size();
  return j;
}

std::string emit_samples(const EllipticSemimodule& esm, int n, double x0, double x1) {
  if (n < 1) invalid_config("sample count must be >= 1");
  if (!std::isfinite(x0) || !std::isfinite(x1) || !(x1 > x0)) invalid_config("degenerate sample range");
  if (esm.modes.empty()) contract_violation("cannot sample an empty semimodule");
  std::string out = "x,re,im,modulus\n";
  for (int k = 0; k < n; ++k) {
    double x = n == 1 ? x0 : x0 + (x1 - x0) * k / (n - 1);
    auto z = evaluate(esm, x);
    out += format_double(x) + "," + format_double(z.real()) + "," + format_double(z.imag()) + "," +
           format_double(std::abs(z)) + "\n";
  }
  return out;
}

}  // namespace bisheaf
