#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bisheaf/bisemigroup.hpp"
#include "bisheaf/blowup.hpp"
#include "bisheaf/cuspidal.hpp"
#include "bisheaf/json_writer.hpp"
#include "bisheaf/singularity.hpp"
#include "bisheaf/tower.hpp"

namespace bisheaf {

struct AmplitudeEntry {
  ClassIndex index;
  double amplitude = 1.0;
};

/// unit: r = 1; mu: r = μ; table: listed values, `fallback` elsewhere.
struct AmplitudeSpec {
  enum class Kind { Unit, Mu, Table };
  Kind kind = Kind::Unit;
  std::vector<AmplitudeEntry> table;
  double fallback = 1.0;

  AmplitudeRule rule() const;
};

struct PipelineConfig {
  TowerConfig tower;
  std::optional<SingularityName> scenario;  // nullopt: no injected singularity
  std::string reduce_predicate = "mu<=H";
  int orth_dims = 3;
  AmplitudeSpec amplitude;
  std::optional<std::pair<int, int>> covering_depths;  // (MG, M)
  bool even_class_convention = false;
  /// 1 or 2; nullopt picks 2 for the umbilics and 1 otherwise.
  std::optional<int> section_dims;
  /// Constant section germ before the shift; nullopt means x².
  std::optional<Germ> germ;
  double blowup_fraction = 1.0;
  std::string output_path;
  std::string output_format = "json";

  /// Throws InvalidConfig on out-of-range fields.
  void validate() const;
  int effective_section_dims() const;
};

/// Parses a reduce rule against a tower: "all", "none", "mu odd", "mu even",
/// or "<mu|m> <op> <value>" with op in {<=, <, >=, >, ==, !=} and value an
/// integer, H (= ⌈depth/2⌉) or D (= depth).
ReducePredicate parse_reduce_predicate(const std::string& rule, const Tower& tower);

TowerConfig tower_config_from_json(const ordered_json& j);
ordered_json to_json(const TowerConfig& c);
ordered_json describe_tower(const Tower& t);

/// {"nvars": 1|2, "coeffs": [[[ex, ey], value], ...]} or a dense one-variable
/// array [c0, c1, ...]. Values are integers, "p/q" strings or decimals.
Germ germ_from_json(const ordered_json& j);
ordered_json to_json(const Germ& g);

PipelineConfig pipeline_config_from_json(const ordered_json& j);
ordered_json to_json(const PipelineConfig& c);

ordered_json to_json(const SingularityClass& c);
ordered_json to_json(const Unfolding& u);
ordered_json to_json(const EllipticSemimodule& esm);
EllipticSemimodule semimodule_from_json(const ordered_json& j);

struct Diagnostic {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct Report {
  PipelineConfig config;
  LevelStack stack;                // levels after the cascade, before desingularization
  std::vector<LevelEntry> desingularized;
  Correspondence correspondence;
  std::vector<LabeledTerm> expansion;
  std::vector<Diagnostic> diagnostics;

  bool passed() const;
  std::vector<Level> labels() const { return stack.labels(); }
};

Report run_pipeline(const PipelineConfig& config);

ordered_json to_json(const Report& r);
/// Level table only: labels, rule, coverage, cascade trace.
ordered_json levels_json(const Report& r);
std::string summary_text(const Report& r);

/// Term list for the expansion of the level sums over `levels`.
std::vector<LabeledTerm> expansion_terms(const std::vector<Level>& levels);
ordered_json emit_expansion(const std::vector<Level>& levels);

/// CSV "x,re,im,modulus" with n evenly spaced rows over [x0, x1].
std::string emit_samples(const EllipticSemimodule& esm, int n, double x0, double x1);

/// Mode-variance threshold used by the oscillator diagnostic.
inline constexpr double kOscillatorTolerance = 1e-12;

}  // namespace bisheaf
