#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bisheaf/bisheaf.h"

namespace {

using json = nlohmann::ordered_json;

struct Failure {
  int code;
  std::string message;
};

struct OwnedString {
  char* p = nullptr;
  ~OwnedString() { bisheaf_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

void check(bisheaf_status s) {
  if (s != BISHEAF_OK) throw Failure{static_cast<int>(s), bisheaf_last_error()};
}

std::string read_source(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{BISHEAF_ERR_INVALID_CONFIG, "cannot read " + path};
  return {std::istreambuf_iterator<char>(in), {}};
}

json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Failure{BISHEAF_ERR_INVALID_CONFIG, what + ": " + e.what()};
  }
}

std::vector<int> int_list(const std::string& csv, const std::string& what) {
  std::vector<int> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Failure{BISHEAF_ERR_INVALID_CONFIG, what + " must be a comma-separated list of integers"};
    }
  }
  return out;
}

void write_file(const std::string& path, const std::string& text) {
  std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Failure{BISHEAF_ERR_INVALID_CONFIG, "cannot write " + path};
  out << text;
}

/// --out flag, then BISHEAF_OUTPUT_DIR/<fallback>, else nullopt (stdout).
std::optional<std::string> output_path(const std::string& flag, const char* fallback_name) {
  if (!flag.empty()) return flag;
  if (const char* dir = std::getenv("BISHEAF_OUTPUT_DIR"); dir && *dir)
    return (std::filesystem::path(dir) / fallback_name).string();
  return std::nullopt;
}

const char* kTowerKeys[] = {"quantum_modulus", "offset", "depth", "multiplicity", "complex_multiplicity"};

struct TowerFlags {
  std::optional<long long> modulus, offset;
  std::optional<int> depth;
  std::string multiplicity, complex_multiplicity;

  void add(CLI::App* cmd) {
    cmd->add_option("-N,--modulus", modulus, "quantum modulus N");
    cmd->add_option("--offset", offset, "uniform residue of every degree");
    cmd->add_option("--depth", depth, "largest class index");
    cmd->add_option("--multiplicity", multiplicity, "m(mu) for mu = 1.., comma separated");
    cmd->add_option("--complex-multiplicity", complex_multiplicity, "complex multiplicities, comma separated");
  }

  json to_json() const {
    json t = json::object();
    if (modulus) t["quantum_modulus"] = *modulus;
    if (offset) t["offset"] = *offset;
    if (depth) t["depth"] = *depth;
    if (!multiplicity.empty()) t["multiplicity"] = int_list(multiplicity, "--multiplicity");
    if (!complex_multiplicity.empty())
      t["complex_multiplicity"] = int_list(complex_multiplicity, "--complex-multiplicity");
    return t;
  }
};

/// Moves top-level tower keys of a config object under "tower".
json nest_tower(json j) {
  if (!j.is_object()) throw Failure{BISHEAF_ERR_INVALID_CONFIG, "config must be a JSON object"};
  json tower = j.contains("tower") ? j["tower"] : json::object();
  if (!tower.is_object()) throw Failure{BISHEAF_ERR_INVALID_CONFIG, "config tower must be a JSON object"};
  for (const char* k : kTowerKeys) {
    if (j.contains(k)) {
      tower[k] = j[k];
      j.erase(k);
    }
  }
  if (!tower.empty()) j["tower"] = tower;
  return j;
}

/// Flag values with every key present in the config file replaced by the file's value.
json merge_config(json flags, const std::string& config_path) {
  if (config_path.empty()) return flags;
  json file = nest_tower(parse_json(read_source(config_path), "config"));
  for (auto it = file.begin(); it != file.end(); ++it) {
    if (it.key() == "tower" && flags.contains("tower")) {
      for (auto t = it.value().begin(); t != it.value().end(); ++t) flags["tower"][t.key()] = t.value();
    } else {
      flags[it.key()] = it.value();
    }
  }
  return flags;
}

struct PipelineFlags {
  TowerFlags tower;
  std::string scenario, reduce, amplitude, covering_depths, germ, section_dims, config;
  std::optional<int> orth_dims;
  std::optional<double> blowup_fraction;
  bool even_class = false;

  void add(CLI::App* cmd) {
    tower.add(cmd);
    cmd->add_option("--scenario", scenario, "none or a catalogue class name");
    cmd->add_option("--reduce", reduce, "reduce predicate, e.g. mu<=H");
    cmd->add_option("--orth-dims", orth_dims, "orthogonal projection dimension (2 or 3)");
    cmd->add_option("--amplitude", amplitude, "unit, mu, or a JSON table object");
    cmd->add_option("--covering-depths", covering_depths, "MG,M covering tower depths");
    cmd->add_flag("--even-class", even_class, "compactify even classes only");
    cmd->add_option("--section-dims", section_dims, "1, 2 or auto");
    cmd->add_option("--germ", germ, "section germ as JSON");
    cmd->add_option("--blowup-fraction", blowup_fraction, "share of each monomial sheaf detached");
    cmd->add_option("--config", config, "JSON config file, - for stdin; overrides flags");
  }

  json to_json() const {
    json j = json::object();
    json t = tower.to_json();
    if (!t.empty()) j["tower"] = t;
    if (!scenario.empty()) j["scenario"] = scenario;
    if (!reduce.empty()) j["reduce_predicate"] = reduce;
    if (orth_dims) j["orth_dims"] = *orth_dims;
    if (!amplitude.empty())
      j["amplitude_rule"] = amplitude.front() == '{' ? parse_json(amplitude, "--amplitude") : json(amplitude);
    if (!covering_depths.empty()) j["covering_depths"] = int_list(covering_depths, "--covering-depths");
    if (even_class) j["even_class_convention"] = true;
    if (!section_dims.empty())
      j["section_dims"] = section_dims == "auto" ? json("auto") : json(int_list(section_dims, "--section-dims"));
    if (j.contains("section_dims") && j["section_dims"].is_array()) {
      if (j["section_dims"].size() != 1) throw Failure{BISHEAF_ERR_INVALID_CONFIG, "--section-dims takes one value"};
      j["section_dims"] = j["section_dims"][0];
    }
    if (!germ.empty()) j["germ"] = parse_json(germ, "--germ");
    if (blowup_fraction) j["blowup_fraction"] = *blowup_fraction;
    return merge_config(j, config);
  }
};

using PipelinePtr = std::unique_ptr<bisheaf_pipeline, decltype(&bisheaf_pipeline_destroy)>;

/// Creates and runs a pipeline. A diagnostic failure still yields a report;
/// its status is returned for the exit code.
std::pair<PipelinePtr, int> run(const json& config) {
  bisheaf_pipeline* raw = nullptr;
  check(bisheaf_pipeline_create(config.dump().c_str(), &raw));
  PipelinePtr p(raw, &bisheaf_pipeline_destroy);
  bisheaf_status s = bisheaf_pipeline_run(p.get());
  if (s != BISHEAF_OK && s != BISHEAF_ERR_DIAGNOSTIC) check(s);
  if (s == BISHEAF_ERR_DIAGNOSTIC) std::cerr << "error: " << bisheaf_last_error() << "\n";
  return {std::move(p), static_cast<int>(s)};
}

void emit(const std::string& text, const std::optional<std::string>& path) {
  if (path)
    write_file(*path, text);
  else
    std::cout << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bisemisheaf tower, singularity cascade and cuspidal correspondence tool"};
  app.require_subcommand(1);
  app.set_version_flag("--version", bisheaf_version());

  auto* tower_cmd = app.add_subcommand("tower", "describe a tower of completions");
  TowerFlags tower_flags;
  std::string tower_config, tower_out;
  tower_flags.add(tower_cmd);
  tower_cmd->add_option("--config", tower_config, "tower JSON file, - for stdin; overrides flags");
  tower_cmd->add_option("--out", tower_out, "write JSON here instead of stdout");

  auto* classify_cmd = app.add_subcommand("classify", "classify germs, one JSON germ per line");
  std::string classify_input = "-";
  classify_cmd->allow_extras();
  classify_cmd->footer("Germ JSON values may also be passed as arguments.");
  classify_cmd->add_option("--input", classify_input, "file with one germ per line, - for stdin");

  auto* unfold_cmd = app.add_subcommand("unfold", "versal unfolding of a catalogue class");
  std::string unfold_name;
  unfold_cmd->add_option("class", unfold_name, "Fold, Cusp, Swallowtail, EllipticUmbilic or HyperbolicUmbilic")
      ->required();

  auto* levels_cmd = app.add_subcommand("levels", "run the singularity cascade and print the level table");
  PipelineFlags levels_flags;
  std::string levels_out;
  levels_flags.add(levels_cmd);
  levels_cmd->add_option("--out", levels_out, "write JSON here instead of stdout");

  auto* correspond_cmd = app.add_subcommand("correspond", "run the full pipeline and write the report");
  PipelineFlags corr_flags;
  std::string corr_out;
  bool corr_json = false;
  corr_flags.add(correspond_cmd);
  correspond_cmd->add_option("--out", corr_out, "JSON report path");
  correspond_cmd->add_flag("--json", corr_json, "print the JSON report on stdout instead of the summary");

  auto* expand_cmd = app.add_subcommand("expand", "distributive expansion of the level sums");
  std::string expand_levels;
  std::string expand_out;
  expand_cmd->add_option("--levels", expand_levels, "comma-separated level tags")->required();
  expand_cmd->add_option("--out", expand_out, "write JSON here instead of stdout");

  auto* samples_cmd = app.add_subcommand("samples", "evaluate a compactified semimodule on a grid");
  PipelineFlags samples_flags;
  std::string samples_modes, samples_csv, samples_level = "ST", samples_part = "reduced", samples_side = "Left";
  int samples_n = 100;
  double samples_x0 = 0.0, samples_x1 = 2.0;
  samples_flags.add(samples_cmd);
  samples_cmd->add_option("--modes", samples_modes, "semimodule JSON file; otherwise run the pipeline");
  samples_cmd->add_option("--level", samples_level, "ST, MG or M");
  samples_cmd->add_option("--part", samples_part, "reduced or orthogonal");
  samples_cmd->add_option("--side", samples_side, "Left or Right");
  samples_cmd->add_option("-n,--count", samples_n, "number of rows");
  samples_cmd->add_option("--from", samples_x0, "range start");
  samples_cmd->add_option("--to", samples_x1, "range end");
  samples_cmd->add_option("--csv", samples_csv, "CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return BISHEAF_ERR_INVALID_CONFIG;
  }

  try {
    if (*tower_cmd) {
      json t = tower_flags.to_json();
      if (!tower_config.empty()) {
        json file = nest_tower(parse_json(read_source(tower_config), "tower config"));
        if (file.contains("tower"))
          for (auto it = file["tower"].begin(); it != file["tower"].end(); ++it) t[it.key()] = it.value();
      }
      OwnedString out;
      check(bisheaf_tower_describe(t.dump().c_str(), &out.p));
      emit(out.str(), output_path(tower_out, "tower.json"));
      return 0;
    }
    if (*classify_cmd) {
      std::vector<std::string> lines = classify_cmd->remaining();
      if (lines.empty()) {
        std::istringstream in(read_source(classify_input));
        for (std::string line; std::getline(in, line);)
          if (line.find_first_not_of(" \t\r") != std::string::npos) lines.push_back(line);
      }
      int code = 0;
      for (const auto& line : lines) {
        OwnedString out;
        bisheaf_status s = bisheaf_classify(line.c_str(), &out.p);
        if (s != BISHEAF_OK) {
          std::cerr << "error: " << bisheaf_last_error() << "\n";
          if (code == 0) code = s;
          continue;
        }
        std::cout << out.str() << "\n";
      }
      return code;
    }
    if (*unfold_cmd) {
      OwnedString out;
      check(bisheaf_unfold(unfold_name.c_str(), &out.p));
      std::cout << out.str();
      return 0;
    }
    if (*expand_cmd) {
      OwnedString out;
      check(bisheaf_expand(expand_levels.c_str(), &out.p));
      emit(out.str(), output_path(expand_out, "expansion.json"));
      return 0;
    }
    if (*levels_cmd) {
      auto [p, code] = run(levels_flags.to_json());
      OwnedString out;
      check(bisheaf_pipeline_levels(p.get(), &out.p));
      emit(out.str(), output_path(levels_out, "levels.json"));
      return code;
    }
    if (*correspond_cmd) {
      auto [p, code] = run(corr_flags.to_json());
      OwnedString report;
      check(bisheaf_pipeline_report(p.get(), &report.p));
      std::string configured = bisheaf_pipeline_output_path(p.get());
      auto path = output_path(configured.empty() ? corr_out : configured, "report.json");
      if (corr_json) {
        std::cout << report.str();
      } else {
        OwnedString summary;
        check(bisheaf_pipeline_summary(p.get(), &summary.p));
        std::cout << summary.str();
      }
      if (path) write_file(*path, report.str());
      return code;
    }
    if (*samples_cmd) {
      std::string modes;
      int code = 0;
      if (!samples_modes.empty()) {
        modes = read_source(samples_modes);
      } else {
        auto [p, c] = run(samples_flags.to_json());
        code = c;
        OwnedString esm;
        check(bisheaf_pipeline_semimodule(p.get(), samples_level.c_str(), samples_part.c_str(),
                                          samples_side.c_str(), &esm.p));
        modes = esm.str();
      }
      OwnedString csv;
      check(bisheaf_samples(modes.c_str(), samples_n, samples_x0, samples_x1, &csv.p));
      emit(csv.str(), output_path(samples_csv, "samples.csv"));
      return code;
    }
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return BISHEAF_ERR_INTERNAL;
  }
  return 0;
}
