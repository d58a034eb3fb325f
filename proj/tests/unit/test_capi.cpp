#include <gtest/gtest.h>

#include <string>

#include "bisheaf/bisheaf.h"

namespace {

struct Owned {
  char* p = nullptr;
  ~Owned() { bisheaf_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

}  // namespace

TEST(CApi, TowerDescribe) {
  Owned out;
  ASSERT_EQ(bisheaf_tower_describe(R"({"quantum_modulus": 2, "offset": 1, "depth": 3})", &out.p), BISHEAF_OK);
  EXPECT_NE(out.str().find("\"real_degree\": 7"), std::string::npos);
  EXPECT_STREQ(bisheaf_last_error(), "");
}

TEST(CApi, StatusCodes) {
  Owned out;
  EXPECT_EQ(bisheaf_tower_describe(R"({"quantum_modulus": 0, "depth": 3})", &out.p), BISHEAF_ERR_INVALID_CONFIG);
  EXPECT_NE(std::string(bisheaf_last_error()).find("quantum_modulus"), std::string::npos);
  EXPECT_EQ(bisheaf_tower_describe("{not json", &out.p), BISHEAF_ERR_INVALID_CONFIG);
  EXPECT_EQ(bisheaf_tower_describe(nullptr, &out.p), BISHEAF_ERR_ARGUMENT);
  EXPECT_EQ(bisheaf_unfold("Morse", &out.p), BISHEAF_ERR_INVALID_CONFIG);
  EXPECT_EQ(bisheaf_expand("", &out.p), BISHEAF_ERR_INVALID_CONFIG);
  EXPECT_EQ(bisheaf_expand("ST,ST", &out.p), BISHEAF_ERR_CONTRACT);
}

TEST(CApi, ClassifyAndUnfold) {
  Owned c;
  ASSERT_EQ(bisheaf_classify(R"({"nvars": 2, "coeffs": [[[3, 0], 1], [[0, 3], 1]]})", &c.p), BISHEAF_OK);
  EXPECT_NE(c.str().find("HyperbolicUmbilic"), std::string::npos);
  Owned u;
  ASSERT_EQ(bisheaf_unfold("Cusp", &u.p), BISHEAF_OK);
  EXPECT_NE(u.str().find("x^4 + a1*x + a2*x^2"), std::string::npos);
}

TEST(CApi, PipelineLifecycle) {
  bisheaf_pipeline* p = nullptr;
  ASSERT_EQ(bisheaf_pipeline_create(R"({"quantum_modulus": 2, "depth": 3, "scenario": "Swallowtail"})", &p),
            BISHEAF_OK);
  Owned early;
  EXPECT_EQ(bisheaf_pipeline_report(p, &early.p), BISHEAF_ERR_CONTRACT);
  EXPECT_EQ(bisheaf_pipeline_level_count(p), 0u);
  ASSERT_EQ(bisheaf_pipeline_run(p), BISHEAF_OK);
  EXPECT_EQ(bisheaf_pipeline_level_count(p), 3u);
  Owned report, levels, summary, esm;
  ASSERT_EQ(bisheaf_pipeline_report(p, &report.p), BISHEAF_OK);
  EXPECT_NE(report.str().find("\"passed\": true"), std::string::npos);
  ASSERT_EQ(bisheaf_pipeline_levels(p, &levels.p), BISHEAF_OK);
  ASSERT_EQ(bisheaf_pipeline_summary(p, &summary.p), BISHEAF_OK);
  EXPECT_EQ(summary.str().rfind("levels: ST, MG, M", 0), 0u);
  ASSERT_EQ(bisheaf_pipeline_semimodule(p, "MG", "reduced", "Left", &esm.p), BISHEAF_OK);
  Owned csv;
  ASSERT_EQ(bisheaf_samples(esm.p, 4, 0.0, 1.0, &csv.p), BISHEAF_OK);
  EXPECT_EQ(csv.str().rfind("x,re,im,modulus\n", 0), 0u);
  Owned missing;
  EXPECT_EQ(bisheaf_pipeline_semimodule(p, "M", "sideways", "Left", &missing.p), BISHEAF_ERR_INVALID_CONFIG);
  bisheaf_pipeline_destroy(p);
}

TEST(CApi, PipelineContractViolation) {
  bisheaf_pipeline* p = nullptr;
  ASSERT_EQ(bisheaf_pipeline_create(
                R"({"quantum_modulus": 2, "depth": 3, "scenario": "EllipticUmbilic", "section_dims": 1})", &p),
            BISHEAF_OK);
  EXPECT_EQ(bisheaf_pipeline_run(p), BISHEAF_ERR_CONTRACT);
  EXPECT_EQ(std::string(bisheaf_last_error()).rfind("levels: ", 0), 0u);
  bisheaf_pipeline_destroy(p);
  EXPECT_EQ(bisheaf_pipeline_run(nullptr), BISHEAF_ERR_ARGUMENT);
}
