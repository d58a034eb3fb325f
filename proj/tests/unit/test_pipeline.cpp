#include <gtest/gtest.h>

#include <limits>

#include "bisheaf/pipeline.hpp"
#include "generators.hpp"
#include "oracle.hpp"

using namespace bisheaf;

namespace {

PipelineConfig config(std::optional<SingularityName> scenario, TowerConfig tower = {3, 1, 4, {1, 2, 1, 2}, {}}) {
  PipelineConfig c;
  c.tower = tower;
  c.scenario = scenario;
  return c;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::DiagnosticFailure;
}

}  // namespace

TEST(Predicate, Grammar) {
  Tower t = build_tower({1, 0, 5, {}, {}});
  EXPECT_TRUE(parse_reduce_predicate("mu<=H", t)({3, 1}));
  EXPECT_FALSE(parse_reduce_predicate("mu <= H", t)({4, 1}));
  EXPECT_TRUE(parse_reduce_predicate("mu>2", t)({3, 1}));
  EXPECT_FALSE(parse_reduce_predicate("m!=1", t)({3, 1}));
  EXPECT_TRUE(parse_reduce_predicate("mu==D", t)({5, 1}));
  EXPECT_TRUE(parse_reduce_predicate("mu odd", t)({5, 1}));
  EXPECT_FALSE(parse_reduce_predicate("mu even", t)({5, 1}));
  EXPECT_TRUE(parse_reduce_predicate("all", t)({2, 1}));
  EXPECT_FALSE(parse_reduce_predicate("none", t)({2, 1}));
  EXPECT_THROW(parse_reduce_predicate("mu ~ 3", t), Error);
  EXPECT_THROW(parse_reduce_predicate("", t), Error);
}

TEST(ConfigJson, ParseAndEcho) {
  auto j = ordered_json::parse(R"({
    "tower": {"quantum_modulus": 2, "depth": 3, "multiplicity": [1, 2, 1]},
    "scenario": "Cusp", "reduce_predicate": "mu odd", "orth_dims": 2,
    "amplitude_rule": {"table": [{"mu": 2, "m": 2, "amplitude": 0.5}], "default": 2},
    "covering_depths": [2, 1], "even_class_convention": true, "germ": [0, 0, 0, 1]
  })");
  PipelineConfig c = pipeline_config_from_json(j);
  EXPECT_EQ(c.tower.multiplicity, (std::vector<int>{1, 2, 1}));
  EXPECT_EQ(c.scenario, SingularityName::Cusp);
  EXPECT_EQ(c.orth_dims, 2);
  EXPECT_EQ(c.amplitude.rule()({2, 2}), 0.5);
  EXPECT_EQ(c.amplitude.rule()({1, 1}), 2.0);
  EXPECT_EQ(c.covering_depths, std::pair(2, 1));
  EXPECT_EQ(*c.germ, Germ::power(3));
  PipelineConfig back = pipeline_config_from_json(to_json(c));
  EXPECT_EQ(to_json_text(to_json(back)), to_json_text(to_json(c)));
}

TEST(ConfigJson, FlatTowerKeys) {
  auto c = pipeline_config_from_json(ordered_json::parse(R"({"quantum_modulus": 5, "depth": 2})"));
  EXPECT_EQ(c.tower.quantum_modulus, 5);
  EXPECT_FALSE(c.scenario.has_value());
}

TEST(ConfigJson, Rejections) {
  auto bad = [](const char* text) {
    return kind_of([&] { pipeline_config_from_json(ordered_json::parse(text)); });
  };
  EXPECT_EQ(bad(R"({"depth": 2})"), ErrorKind::InvalidConfig);
  EXPECT_EQ(bad(R"({"quantum_modulus": 2, "depth": 2, "colour": 1})"), ErrorKind::InvalidConfig);
  EXPECT_EQ(bad(R"({"quantum_modulus": 2, "depth": 2, "scenario": "Morse"})"), ErrorKind::InvalidConfig);
  EXPECT_EQ(bad(R"({"quantum_modulus": 2, "depth": 2, "scenario": "Butterfly"})"), ErrorKind::InvalidConfig);
  EXPECT_EQ(bad(R"({"quantum_modulus": 2, "depth": 2, "orth_dims": 4})"), ErrorKind::InvalidConfig);
  EXPECT_EQ(bad(R"({"quantum_modulus": 2, "depth": 2, "covering_depths": [3, 1]})"), ErrorKind::InvalidConfig);
  EXPECT_EQ(bad(R"({"quantum_modulus": 2, "depth": 2, "covering_depths": [1, 2]})"), ErrorKind::InvalidConfig);
  EXPECT_EQ(bad(R"({"quantum_modulus": "2", "depth": 2})"), ErrorKind::InvalidConfig);
  EXPECT_EQ(bad(R"({"quantum_modulus": 2, "depth": 2, "amplitude_rule": "loud"})"), ErrorKind::InvalidConfig);
  EXPECT_EQ(bad(R"({"quantum_modulus": 2, "depth": 2, "output": {"format": "xml"}})"), ErrorKind::InvalidConfig);
}

TEST(GermJson, Forms) {
  Germ a = germ_from_json(ordered_json::parse(R"({"nvars": 2, "coeffs": [[[3, 0], 1], [[1, 2], "-3"]]})"));
  EXPECT_EQ(a.to_string(), "x^3 - 3*x*y^2");
  Germ b = germ_from_json(ordered_json::parse(R"([0, 0.5, "1/3"])"));
  EXPECT_EQ(b.to_string(), "1/2*x + 1/3*x^2");
  EXPECT_EQ(germ_from_json(to_json(a)), a);
  EXPECT_THROW(germ_from_json(ordered_json::parse(R"({"nvars": 3, "coeffs": []})")), Error);
  EXPECT_THROW(germ_from_json(ordered_json::parse(R"({"nvars": 2, "coeffs": [[[1], 1]]})")), Error);
}

TEST(Pipeline, NoScenarioIsOneLevel) {
  Report r = run_pipeline(config(std::nullopt));
  EXPECT_EQ(r.labels(), (std::vector<Level>{Level::ST}));
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.correspondence.levels.size(), 1u);
  EXPECT_EQ(r.expansion.size(), 1u);
}

TEST(Pipeline, SwallowtailCascade) {
  Report r = run_pipeline(config(SingularityName::Swallowtail));
  EXPECT_EQ(r.labels(), (std::vector<Level>{Level::ST, Level::MG, Level::M}));
  EXPECT_TRUE(r.passed());
  bool cubic = false;
  for (const auto& line : r.stack.trace) cubic = cubic || line.find("x^3 component") != std::string::npos;
  EXPECT_TRUE(cubic);
  EXPECT_EQ(r.expansion.size(), 9u);
}

TEST(Pipeline, LevelTableForEveryScenario) {
  std::vector<std::optional<SingularityName>> scenarios{std::nullopt};
  for (SingularityName n : catalogue_names()) scenarios.push_back(n);
  for (const auto& s : scenarios) {
    Report r = run_pipeline(config(s));
    EXPECT_EQ(static_cast<int>(r.labels().size()), oracle::level_count(s ? to_string(*s) : "none"));
    EXPECT_TRUE(r.passed()) << summary_text(r);
    EXPECT_TRUE(r.correspondence.bijection_holds());
  }
}

TEST(Pipeline, Deterministic) {
  PipelineConfig c = config(SingularityName::Swallowtail);
  c.amplitude.kind = AmplitudeSpec::Kind::Mu;
  std::string a = to_json_text(to_json(run_pipeline(c)));
  std::string b = to_json_text(to_json(run_pipeline(c)));
  EXPECT_EQ(a, b);
}

TEST(Pipeline, ErrorsNameTheStage) {
  PipelineConfig c = config(SingularityName::EllipticUmbilic);
  c.section_dims = 1;
  try {
    run_pipeline(c);
    FAIL() << "expected a contract violation";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ContractViolation);
    EXPECT_EQ(std::string(e.what()).rfind("levels: ", 0), 0u) << e.what();
  }
  PipelineConfig d = config(std::nullopt, {0, 0, 1, {}, {}});
  try {
    run_pipeline(d);
    FAIL() << "expected an invalid config";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidConfig);
  }
}

TEST(Pipeline, EvenClassOnShallowTowerHasNoModes) {
  PipelineConfig c = config(std::nullopt, {2, 0, 1, {}, {}});
  c.even_class_convention = true;
  Report r = run_pipeline(c);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.correspondence.levels[0].weil_side.size(), 0u);
}

TEST(Pipeline, DiagnosticsCoverInvariants) {
  Report r = run_pipeline(config(SingularityName::Cusp));
  std::vector<std::string> names;
  for (const auto& d : r.diagnostics) names.push_back(d.name);
  for (const char* want : {"level_count", "bijection/ST", "bijection/MG", "partition/ST", "partition/MG",
                           "oscillator/ST", "oscillator/MG", "diagram_commutes/ST", "desingularized/ST",
                           "desingularized/MG", "embedding", "resingularization"})
    EXPECT_NE(std::find(names.begin(), names.end(), want), names.end()) << want;
}

TEST(Pipeline, ReportJsonShape) {
  Report r = run_pipeline(config(SingularityName::Fold));
  ordered_json j = to_json(r);
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  EXPECT_EQ(keys, (std::vector<std::string>{"config", "tower", "levels", "level_rule", "input_singularity",
                                            "resingularization", "correspondence", "level_table", "expansion",
                                            "diagnostics", "trace", "passed"}));
  EXPECT_EQ(j["correspondence"].size(), 2u);
  EXPECT_EQ(j["expansion"]["total"], 4);
}

TEST(Expansion, Emit) {
  auto two = emit_expansion({Level::ST, Level::MG});
  EXPECT_EQ(two["free"], 2);
  EXPECT_EQ(two["interaction"], 2);
  auto three = emit_expansion({Level::ST, Level::MG, Level::M});
  EXPECT_EQ(three["free"], 3);
  EXPECT_EQ(three["interaction"], 6);
  EXPECT_EQ(emit_expansion({Level::ST})["total"], 1);
  EXPECT_THROW(emit_expansion({}), Error);
  EXPECT_THROW(emit_expansion({Level::ST, Level::ST}), Error);
}

TEST(Samples, UnitModeHasUnitModulus) {
  EllipticSemimodule e;
  e.modes.push_back({1, 1, 1.0, +1, 1});
  std::string csv = emit_samples(e, 3, 0.0, 1.0);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "x,re,im,modulus");
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  int rows = 0;
  while (std::getline(in, line)) {
    double modulus = std::stod(line.substr(line.rfind(',') + 1));
    EXPECT_NEAR(modulus, 1.0, 1e-15);
    ++rows;
  }
  EXPECT_EQ(rows, 3);
}

TEST(Samples, RowCountAndErrors) {
  EllipticSemimodule e;
  e.modes.push_back({1, 1, 1.0, +1, 1});
  e.modes.push_back({2, 1, 0.5, +1, 2});
  std::string csv = emit_samples(e, 100, -1.0, 1.0);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 101);
  EXPECT_THROW(emit_samples(e, 0, 0.0, 1.0), Error);
  EXPECT_THROW(emit_samples(e, 5, 1.0, 1.0), Error);
  EXPECT_THROW(emit_samples(e, 5, 2.0, 1.0), Error);
  EXPECT_THROW(emit_samples(EllipticSemimodule{}, 5, 0.0, 1.0), Error);
}

TEST(Semimodule, JsonRoundTrip) {
  EllipticSemimodule e;
  e.side = Side::Right;
  e.modes.push_back({3, 2, 0.25, -1, 9});
  EllipticSemimodule back = semimodule_from_json(to_json(e));
  EXPECT_EQ(back.side, Side::Right);
  EXPECT_EQ(back.modes, e.modes);
  EXPECT_THROW(semimodule_from_json(ordered_json::parse(R"([{"mu": 1, "sign": 2}])")), Error);
  EXPECT_THROW(semimodule_from_json(ordered_json::parse("[]")), Error);
}

TEST(JsonWriter, FloatsUseSeventeenDigits) {
  ordered_json j;
  j["a"] = 0.1;
  j["b"] = 1.0;
  j["c"] = 3;
  EXPECT_EQ(to_json_text(j), "{\n  \"a\": 0.10000000000000001,\n  \"b\": 1.0,\n  \"c\": 3\n}\n");
  j["d"] = std::numeric_limits<double>::infinity();
  EXPECT_NE(to_json_text(j).find("\"d\": null"), std::string::npos);
}

TEST(PipelineProperty, RandomConfigsPassDiagnostics) {
  gen::Rng rng(123);
  std::vector<std::optional<SingularityName>> scenarios{std::nullopt};
  for (SingularityName n : catalogue_names()) scenarios.push_back(n);
  const char* predicates[] = {"mu<=H", "mu odd", "m<2", "all", "none", "mu>1"};
  for (int trial = 0; trial < 20; ++trial) {
    PipelineConfig c;
    c.tower = gen::tower_config(rng, {7, 8, 3});
    c.scenario = scenarios[gen::uniform(rng, 0, static_cast<int>(scenarios.size()) - 1)];
    c.reduce_predicate = predicates[gen::uniform(rng, 0, 5)];
    c.orth_dims = gen::uniform(rng, 2, 3);
    c.even_class_convention = gen::uniform(rng, 0, 3) == 0;
    c.amplitude.kind = gen::uniform(rng, 0, 1) ? AmplitudeSpec::Kind::Mu : AmplitudeSpec::Kind::Unit;
    int mg = gen::uniform(rng, 1, c.tower.depth);
    c.covering_depths = std::pair(mg, gen::uniform(rng, 1, mg));
    Report r = run_pipeline(c);
    EXPECT_TRUE(r.passed()) << summary_text(r);
  }
}
