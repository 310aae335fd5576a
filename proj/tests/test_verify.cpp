// Copyright 2026 The solcheck Authors. Licensed under the Apache License, Version 2.0.

#include <gtest/gtest.h>

#include <json.hpp>
#include <set>

#include "solcheck/error.hpp"
#include "solcheck/inspect.hpp"
#include "solcheck/models.hpp"
#include "solcheck/verify.hpp"

using namespace solcheck;

namespace {

const std::vector<std::string> kManifest = {
    "A.bach_symmetric", "A.bianchi1", "A.bianchi2c", "A.bianchi_traced", "A.contraction_commutes",
    "A.cotton_structure", "A.div_w_vs_cotton", "A.grad_r_bound", "A.hessian_symmetry", "A.metric_compat",
    "A.p6_29", "A.riemann_symmetries", "A.torsion_free", "A.weyl_n3_vanish", "A.weyl_tracefree",
    "B.c6_33", "B.c6_34", "B.c6_35", "B.c6_36", "B.c6_37", "B.d_tensor", "B.grad_r_bound_f",
    "B.p2_10", "B.p2_11", "B.p2_12", "B.p2_13", "B.p2_14", "B.p2_15", "B.p2_3", "B.p2_4", "B.p2_5",
    "B.p2_6", "B.p2_7", "B.p2_8", "B.p2_9", "B.p6_30", "B.p6_31", "B.p6_32", "B.rem2_1_div2",
    "B.rem2_1_div3", "B.rem2_1_div4", "B.rem8_39", "B.rem8_40", "B.scalar_nonneg", "B.soliton_eq",
    "B.thm5_1", "C.constant_scalar", "C.radially_flat", "C.ric_sq_lambda_r", "C.rigid_div3rm_f",
    "C.rigid_div3w_f", "C.rigid_div4rm", "C.rigid_div4w", "C.soliton_gate",
};

SamplePlan plan(const char* model, std::size_t n, std::uint64_t seed = 5) {
  return sample_points(builtin_model(model), n, seed);
}

void expect_tier_passes(const char* model, Tier t, std::size_t points) {
  const auto reports = run_tier(t, builtin_model(model), plan(model, points), kDefaultTolerance, 0);
  for (const auto& r : reports) {
    if (!r.counts()) continue;
    EXPECT_TRUE(r.pass) << model << " " << r.check_id << " residual " << r.max_residual << " " << r.message;
  }
}

}  // namespace

TEST(Registry, MatchesGoldenManifest) {
  std::vector<std::string> ids;
  for (const auto& c : list_checks()) ids.push_back(c.id);
  EXPECT_EQ(ids, kManifest);
}

TEST(Registry, IdsUniqueAndTiered) {
  std::set<std::string> seen;
  for (const auto& c : list_checks()) {
    EXPECT_TRUE(seen.insert(c.id).second) << c.id;
    EXPECT_EQ(c.id[0], tier_letter(c.tier));
    if (c.tier != Tier::A) EXPECT_TRUE(c.requires_potential) << c.id;
    EXPECT_GE(c.metric_order, 2);
    EXPECT_LE(c.metric_order, 6);
    EXPECT_FALSE(c.description.empty());
  }
  EXPECT_GE(list_checks().size(), 25u);
}

TEST(Registry, LookupErrors) {
  EXPECT_EQ(find_check("B.thm5_1").tier, Tier::B);
  try {
    find_check("B.nope");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownCheck);
  }
  EXPECT_EQ(parse_tier("c"), Tier::C);
  EXPECT_THROW(parse_tier("D"), Error);
}

TEST(RunCheck, NotApplicableOnNonSoliton) {
  try {
    run_check("B.p2_13", builtin_model("warped_test"), plan("warped_test", 3), kDefaultTolerance);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotApplicable);
  }
  const auto rows = run_checks({"B.p2_13"}, builtin_model("warped_test"), plan("warped_test", 3), kDefaultTolerance);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].status, CheckStatus::NotApplicable);
  EXPECT_FALSE(rows[0].counts());
  EXPECT_TRUE(all_passed(rows));
}

TEST(RunCheck, RadialDiv3OnCylinder) {
  const auto r = run_check("B.thm5_1", builtin_model("cylinder_r1s3"), plan("cylinder_r1s3", 50), kDefaultTolerance);
  EXPECT_TRUE(r.pass);
  EXPECT_LE(r.max_residual, 1e-8);
  EXPECT_LE(r.max_guard, 1e-9);
  EXPECT_EQ(r.points, 50u);
}

TEST(RunCheck, DivWMatchesCottonWithNontrivialSides) {
  const auto r = run_check("A.div_w_vs_cotton", builtin_model("warped_aniso"), plan("warped_aniso", 10),
                           kDefaultTolerance);
  EXPECT_TRUE(r.pass) << r.max_residual;
  EXPECT_GE(r.max_guard, 1e-3);
  // warped_test is conformally flat, so both sides vanish there.
  const auto flat = run_check("A.div_w_vs_cotton", builtin_model("warped_test"), plan("warped_test", 10),
                              kDefaultTolerance);
  EXPECT_TRUE(flat.pass);
  EXPECT_LE(flat.max_guard, 1e-10);
}

TEST(RunCheck, BianchiGuardOnWarpedTest) {
  const auto r = run_check("A.bianchi2c", builtin_model("warped_test"), plan("warped_test", 10), kDefaultTolerance);
  EXPECT_TRUE(r.pass);
  EXPECT_GE(r.max_magnitude, 1e-3);
}

TEST(RunCheck, PassMatchesTolerance) {
  const auto& m = builtin_model("random_perturb");
  const auto p = plan("random_perturb", 4);
  const auto loose = run_check("A.bianchi1", m, p, 1e-8);
  EXPECT_EQ(loose.pass, loose.max_residual <= 1e-8);
  const auto tight = run_check("A.bianchi1", m, p, 1e-300);
  EXPECT_EQ(tight.pass, tight.max_residual <= 1e-300);
  EXPECT_EQ(loose.max_residual, tight.max_residual);
}

TEST(RunCheck, DeterministicAcrossThreadCounts) {
  const auto& m = builtin_model("random_perturb");
  const auto p = plan("random_perturb", 12);
  const auto a = run_tier(Tier::A, m, p, kDefaultTolerance, 1);
  const auto b = run_tier(Tier::A, m, p, kDefaultTolerance, 4);
  EXPECT_EQ(render_reports_json(a), render_reports_json(b));
}

TEST(RunTier, TierAOnEveryCatalogModel) {
  for (const auto& e : builtin_models()) expect_tier_passes(e.spec.name.c_str(), Tier::A, 4);
}

TEST(RunTier, TierBOnRigidShrinkers) {
  expect_tier_passes("product_r2s2", Tier::B, 6);
  expect_tier_passes("cylinder_r1s3", Tier::B, 6);
  expect_tier_passes("gaussian4", Tier::B, 4);
  expect_tier_passes("cylinder3", Tier::B, 4);
}

TEST(RunTier, TierBRowsOnNonSolitonAreNotApplicable) {
  const auto rows = run_tier(Tier::B, builtin_model("warped_test"), plan("warped_test", 2), kDefaultTolerance);
  ASSERT_FALSE(rows.empty());
  for (const auto& r : rows) EXPECT_EQ(r.status, CheckStatus::NotApplicable) << r.check_id;
}

TEST(RunTier, TierCCollapsesOnNonSoliton) {
  const auto rows = run_tier(Tier::C, builtin_model("warped_test"), plan("warped_test", 3), kDefaultTolerance);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].check_id, kSolitonGateId);
  EXPECT_EQ(rows[0].status, CheckStatus::NotASoliton);
}

TEST(RunTier, TierCOnShrinkers) {
  for (const char* m : {"gaussian4", "product_r2s2", "cylinder_r1s3", "sphere4", "sphere3", "cylinder5"})
    expect_tier_passes(m, Tier::C, 4);
}

TEST(Reports, JsonSchema) {
  const auto rows = run_checks({"A.bianchi1", "B.p2_13"}, builtin_model("warped_test"), plan("warped_test", 2),
                               kDefaultTolerance);
  const auto j = nlohmann::json::parse(render_reports_json(rows));
  ASSERT_EQ(j.size(), 2u);
  for (const auto& row : j)
    for (const char* key : {"check_id", "model", "points", "max_residual", "mean_residual", "argmax_point", "pass",
                            "tolerance"})
      EXPECT_TRUE(row.contains(key)) << key;
  EXPECT_EQ(j[0]["check_id"], "A.bianchi1");
  EXPECT_TRUE(j[0]["pass"].get<bool>());
  EXPECT_TRUE(j[1]["pass"].is_null());
  EXPECT_EQ(j[1]["status"], "NotApplicable");
}

TEST(Reports, TextAndJsonAgreeOnNumbers) {
  const auto rows = run_checks({"A.bianchi1"}, builtin_model("random_perturb"), plan("random_perturb", 3),
                               kDefaultTolerance);
  const auto j = nlohmann::json::parse(render_reports_json(rows));
  const std::string text = render_reports_text(rows);
  EXPECT_NE(text.find(format_number(j[0]["max_residual"].get<double>())), std::string::npos) << text;
}

TEST(Classifier, CatalogVerdicts) {
  const std::pair<const char*, Verdict> cases[] = {{"gaussian4", Verdict::Gaussian_R4},
                                                   {"product_r2s2", Verdict::R2xS2},
                                                   {"cylinder_r1s3", Verdict::RxS3},
                                                   {"sphere4", Verdict::Einstein}};
  for (const auto& [name, verdict] : cases) {
    const auto c = classify_dim4(builtin_model(name), plan(name, 10), kDefaultTolerance);
    EXPECT_EQ(c.verdict, verdict) << name << " " << c.reason;
    ASSERT_TRUE(c.snapped_ratio.has_value());
    double sum = 0;
    for (double e : c.ricci_eigenvalues) sum += e;
    EXPECT_NEAR(sum, *c.snapped_ratio, 0.05) << name;
  }
}

TEST(Classifier, NonSolitonsAndErrors) {
  EXPECT_EQ(classify_dim4(builtin_model("warped_test"), plan("warped_test", 5)).verdict, Verdict::NotASoliton);
  EXPECT_EQ(classify_dim4(builtin_model("random_perturb"), plan("random_perturb", 5)).verdict,
            Verdict::NotASoliton);
  try {
    classify_dim4(builtin_model("sphere3"), plan("sphere3", 2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionError);
  }
}

TEST(Classifier, BrokenPotentialFailsGate) {
  ModelSpec m = builtin_model("gaussian4");
  m.lambda = 0.75;
  EXPECT_EQ(classify_dim4(m, sample_points(m, 5, 0)).verdict, Verdict::NotASoliton);
}

TEST(Inspect, WeylNormOnProduct) {
  const auto& m = builtin_model("product_r2s2");
  const auto p = sample_points(m, 1, 0).points[0];
  EXPECT_NEAR(dump_tensor(m, "weyl", p).norm_sq, 1.0 / 3.0, 1e-7);
  EXPECT_LE(std::abs(dump_tensor(m, "div4rm", p).values[0]), 1e-8);
}

TEST(Inspect, FlatRiemannIsAllZero) {
  const auto& m = builtin_model("gaussian4");
  const Point p = parse_point(m, "x1=1,x2=0,x3=0,x4=0");
  const std::string text = render_dump_text(dump_tensor(m, "riemann", p), 1e-12);
  EXPECT_NE(text.find("all components zero"), std::string::npos) << text;
}

TEST(Inspect, Errors) {
  const auto& m = builtin_model("gaussian4");
  const Point p = parse_point(m, "x1=0, x2=0, x3=0, x4=0");
  try {
    dump_tensor(m, "einstein", p);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownTensor);
  }
  try {
    dump_tensor(m, "ricci", std::vector<double>{100, 0, 0, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DomainError);
  }
  EXPECT_THROW(parse_point(m, "x1=0,x2=0,x3=0"), Error);
  EXPECT_THROW(parse_point(m, "x1=0,x1=0,x3=0,x4=0"), Error);
  EXPECT_THROW(parse_point(m, "x1=a,x2=0,x3=0,x4=0"), Error);
}
