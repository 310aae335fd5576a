// Copyright 2026 The solcheck Authors. Licensed under the Apache License, Version 2.0.

#include <gtest/gtest.h>

#include <algorithm>
#include <cstdio>
#include <fstream>

#include "solcheck/error.hpp"
#include "solcheck/models.hpp"

using namespace solcheck;

namespace {

const char* kHyperbolic = R"({
  "name": "half_plane",
  "dimension": 2,
  "coordinates": ["x", "y"],
  "metric": [["1/y^2", "0"], ["0", "1/y^2"]],
  "domain": {"x": [-1, 1], "y": [0.5, 2]},
  "margins": {"y": 0.1}
})";

ErrorCode code_of(const std::string& text) {
  try {
    parse_model(text);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error for " << text;
  return ErrorCode::IoError;
}

}  // namespace

TEST(Catalog, SortedAndUnique) {
  const auto& models = builtin_models();
  ASSERT_GE(models.size(), 10u);
  for (std::size_t i = 1; i < models.size(); ++i) EXPECT_LT(models[i - 1].spec.name, models[i].spec.name);
}

TEST(Catalog, EntriesValidate) {
  for (const auto& e : builtin_models()) {
    EXPECT_NO_THROW(validate_structure(e.spec)) << e.spec.name;
    EXPECT_EQ(e.shrinker, e.spec.potential.has_value()) << e.spec.name;
  }
}

TEST(Catalog, UnknownName) {
  try {
    builtin_model("no_such_model");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownModel);
  }
}

TEST(Catalog, ShrinkersSatisfySolitonEquation) {
  for (const auto& e : builtin_models()) {
    if (!e.shrinker) continue;
    const auto plan = sample_points(e.spec, 20, 3);
    for (const auto& p : plan.points) EXPECT_LE(soliton_residual(e.spec, p).max_abs_value(), 1e-10) << e.spec.name;
  }
}

TEST(Catalog, NonSolitonsHaveNoPotential) {
  for (const char* n : {"warped_test", "warped3", "warped_aniso", "random_perturb"})
    EXPECT_FALSE(builtin_model(n).potential.has_value()) << n;
}

TEST(Loader, ParsesAndRoundTrips) {
  const ModelSpec m = parse_model(kHyperbolic);
  EXPECT_EQ(m.name, "half_plane");
  EXPECT_EQ(m.dimension, 2);
  EXPECT_DOUBLE_EQ(m.margins[1], 0.1);
  const ModelSpec again = parse_model(model_to_json(m));
  EXPECT_TRUE(equivalent(m, again));
  EXPECT_EQ(model_to_json(m), model_to_json(again));
}

TEST(Loader, CatalogRoundTrips) {
  for (const auto& e : builtin_models()) EXPECT_TRUE(equivalent(e.spec, parse_model(model_to_json(e.spec)))) << e.spec.name;
}

TEST(Loader, JsonSyntaxErrorReportsLocation) {
  try {
    parse_model("{\n  \"name\": \"x\",\n  \"dimension\": ,\n}");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParseError);
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
}

TEST(Loader, ValidationErrors) {
  std::string asym = kHyperbolic;
  asym.replace(asym.find("[\"0\", \"1/y^2\"]"), 14, "[\"x\", \"1/y^2\"]");
  EXPECT_EQ(code_of(asym), ErrorCode::ValidationError);

  std::string no_lambda = kHyperbolic;
  no_lambda.replace(no_lambda.find("\"domain\""), 0, "\"potential\": \"y\",\n  ");
  EXPECT_EQ(code_of(no_lambda), ErrorCode::ValidationError);

  std::string bad_coord = kHyperbolic;
  bad_coord.replace(bad_coord.find("\"1/y^2\""), 7, "\"1/z^2\"");
  EXPECT_NE(code_of(bad_coord), ErrorCode::IoError);

  std::string not_pd = kHyperbolic;
  not_pd.replace(not_pd.find("\"1/y^2\""), 7, "\"-1\"");
  EXPECT_EQ(code_of(not_pd), ErrorCode::ValidationError);

  EXPECT_EQ(code_of("[1, 2]"), ErrorCode::ValidationError);
  EXPECT_EQ(code_of("{\"name\": \"a\"}"), ErrorCode::ValidationError);
}

TEST(Loader, FileErrors) {
  try {
    load_model("/nonexistent/model.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IoError);
  }
  const std::string path = ::testing::TempDir() + "half_plane.json";
  {
    std::ofstream f(path);
    f << kHyperbolic;
  }
  EXPECT_EQ(resolve_model(path).name, "half_plane");
  EXPECT_EQ(resolve_model("sphere4").name, "sphere4");
  std::remove(path.c_str());
}

TEST(Sampler, DeterministicAndInsideMargins) {
  const ModelSpec m = parse_model(kHyperbolic);
  const auto a = sample_points(m, 50, 11);
  const auto b = sample_points(m, 50, 11);
  const auto c = sample_points(m, 50, 12);
  ASSERT_EQ(a.points.size(), 50u);
  EXPECT_EQ(a.points, b.points);
  EXPECT_NE(a.points, c.points);
  for (const auto& p : a.points) {
    EXPECT_GE(p[1], 0.6);
    EXPECT_LE(p[1], 1.9);
  }
}

TEST(Sampler, SinglePointIsCenter) {
  const ModelSpec m = parse_model(kHyperbolic);
  const auto plan = sample_points(m, 1, 99);
  ASSERT_EQ(plan.points.size(), 1u);
  EXPECT_DOUBLE_EQ(plan.points[0][0], 0.0);
  EXPECT_DOUBLE_EQ(plan.points[0][1], 1.25);
}

TEST(Sampler, EmptyDomain) {
  ModelSpec m = parse_model(kHyperbolic);
  m.margins[0] = 5.0;
  try {
    sample_points(m, 3, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyDomain);
  }
}
