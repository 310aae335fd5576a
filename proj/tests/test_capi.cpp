// Copyright 2026 The solcheck Authors. Licensed under the Apache License, Version 2.0.

#include <gtest/gtest.h>

#include <string>

#include "solcheck/solcheck.h"

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  sc_string_free(s);
  return out;
}

sc_run_options quick(std::size_t points) {
  sc_run_options o;
  sc_default_options(&o);
  o.points = points;
  return o;
}

}  // namespace

TEST(CApi, SelfTestAndVersion) {
  EXPECT_EQ(sc_self_test(), SC_OK);
  EXPECT_STRNE(sc_version(), "");
  EXPECT_STREQ(sc_status_name(SC_OK), "OK");
  EXPECT_STREQ(sc_status_name(SC_E_UNKNOWN_MODEL), "UnknownModel");
  EXPECT_STREQ(sc_status_name(SC_E_IO), "IoError");
}

TEST(CApi, ModelLifecycle) {
  sc_model* m = nullptr;
  ASSERT_EQ(sc_model_builtin("sphere4", &m), SC_OK);
  EXPECT_STREQ(sc_model_name(m), "sphere4");
  EXPECT_EQ(sc_model_dimension(m), 4);
  EXPECT_EQ(sc_model_has_potential(m), 1);
  char* json = nullptr;
  ASSERT_EQ(sc_model_to_json(m, &json), SC_OK);
  sc_model* again = nullptr;
  ASSERT_EQ(sc_model_parse(json, &again), SC_OK);
  EXPECT_STREQ(sc_model_name(again), "sphere4");
  sc_string_free(json);
  sc_model_free(again);
  sc_model_free(m);
  sc_model_free(nullptr);
}

TEST(CApi, ErrorCodesAndMessages) {
  sc_model* m = nullptr;
  EXPECT_EQ(sc_model_builtin("nope", &m), SC_E_UNKNOWN_MODEL);
  EXPECT_EQ(m, nullptr);
  EXPECT_NE(std::string(sc_last_error()).find("nope"), std::string::npos);
  EXPECT_EQ(sc_model_resolve("/no/such/file.json", &m), SC_E_IO);
  EXPECT_EQ(sc_model_parse("{", &m), SC_E_PARSE);
  EXPECT_EQ(sc_model_parse("{\"name\":1}", &m), SC_E_VALIDATION);
  EXPECT_EQ(sc_model_builtin(nullptr, &m), SC_E_INVALID_ARGUMENT);
  ASSERT_EQ(sc_model_builtin("gaussian4", &m), SC_OK);
  EXPECT_STREQ(sc_last_error(), "");
  char* out = nullptr;
  EXPECT_EQ(sc_tensor_dump(m, "nope", "x1=0,x2=0,x3=0,x4=0", SC_FORMAT_TEXT, 1e-12, &out), SC_E_UNKNOWN_TENSOR);
  EXPECT_EQ(sc_tensor_dump(m, "ricci", "x1=50,x2=0,x3=0,x4=0", SC_FORMAT_TEXT, 1e-12, &out), SC_E_DOMAIN);
  sc_report* r = nullptr;
  const sc_run_options o = quick(2);
  const char* bad[] = {"A.nope"};
  EXPECT_EQ(sc_verify(m, nullptr, bad, 1, &o, &r), SC_E_UNKNOWN_CHECK);
  EXPECT_EQ(sc_verify(m, nullptr, nullptr, 0, &o, &r), SC_E_INVALID_ARGUMENT);
  sc_run_options zero = o;
  zero.points = 0;
  EXPECT_EQ(sc_verify(m, "A", nullptr, 0, &zero, &r), SC_E_INVALID_ARGUMENT);
  sc_model_free(m);
}

TEST(CApi, Listings) {
  char* out = nullptr;
  ASSERT_EQ(sc_list_models(SC_FORMAT_TEXT, &out), SC_OK);
  EXPECT_NE(take(out).find("gaussian4"), std::string::npos);
  ASSERT_EQ(sc_list_checks("B", SC_FORMAT_TEXT, &out), SC_OK);
  const std::string b = take(out);
  EXPECT_NE(b.find("B.p2_14"), std::string::npos);
  EXPECT_EQ(b.find("A.bianchi1"), std::string::npos);
  ASSERT_EQ(sc_list_checks(nullptr, SC_FORMAT_JSON, &out), SC_OK);
  EXPECT_EQ(take(out).front(), '[');
  EXPECT_EQ(sc_list_checks("Q", SC_FORMAT_TEXT, &out), SC_E_UNKNOWN_CHECK);
}

TEST(CApi, VerifyReportRows) {
  sc_model* m = nullptr;
  ASSERT_EQ(sc_model_builtin("warped_test", &m), SC_OK);
  const sc_run_options o = quick(3);
  const char* ids[] = {"B.p2_13"};
  sc_report* r = nullptr;
  ASSERT_EQ(sc_verify(m, "A", ids, 1, &o, &r), SC_OK);
  ASSERT_GT(sc_report_count(r), 1u);
  EXPECT_EQ(sc_report_all_passed(r), 1);
  bool saw_na = false;
  for (size_t i = 0; i < sc_report_count(r); ++i) {
    sc_report_row row;
    ASSERT_EQ(sc_report_row_at(r, i, &row), SC_OK);
    if (std::string(row.check_id) == "B.p2_13") {
      saw_na = true;
      EXPECT_EQ(row.status, SC_ROW_NOT_APPLICABLE);
      EXPECT_EQ(row.pass, -1);
    }
  }
  EXPECT_TRUE(saw_na);
  sc_report_row row;
  EXPECT_EQ(sc_report_row_at(r, 9999, &row), SC_E_INVALID_ARGUMENT);
  char* json = nullptr;
  ASSERT_EQ(sc_report_render(r, SC_FORMAT_JSON, &json), SC_OK);
  EXPECT_NE(take(json).find("\"check_id\""), std::string::npos);
  sc_report_free(r);
  sc_model_free(m);
}

TEST(CApi, ForcedFailure) {
  sc_model* m = nullptr;
  ASSERT_EQ(sc_model_builtin("random_perturb", &m), SC_OK);
  sc_run_options o = quick(3);
  o.tolerance = 1e-300;
  const char* ids[] = {"A.bianchi2c"};
  sc_report* r = nullptr;
  ASSERT_EQ(sc_verify(m, nullptr, ids, 1, &o, &r), SC_OK);
  EXPECT_EQ(sc_report_all_passed(r), 0);
  sc_report_free(r);
  sc_model_free(m);
}

TEST(CApi, Classify) {
  sc_model* m = nullptr;
  ASSERT_EQ(sc_model_builtin("cylinder_r1s3", &m), SC_OK);
  const sc_run_options o = quick(5);
  sc_classification* c = nullptr;
  ASSERT_EQ(sc_classify(m, &o, &c), SC_OK);
  EXPECT_STREQ(sc_classification_verdict(c), "RxS3");
  EXPECT_EQ(sc_classification_definite(c), 1);
  EXPECT_NEAR(sc_classification_scalar_ratio(c), 3.0, 1e-8);
  char* text = nullptr;
  ASSERT_EQ(sc_classification_render(c, SC_FORMAT_TEXT, &text), SC_OK);
  EXPECT_NE(take(text).find("RxS3"), std::string::npos);
  sc_classification_free(c);
  sc_model_free(m);

  ASSERT_EQ(sc_model_builtin("sphere3", &m), SC_OK);
  EXPECT_EQ(sc_classify(m, &o, &c), SC_E_DIMENSION);
  sc_model_free(m);
}

TEST(CApi, TensorDump) {
  sc_model* m = nullptr;
  ASSERT_EQ(sc_model_builtin("gaussian4", &m), SC_OK);
  char* out = nullptr;
  ASSERT_EQ(sc_tensor_dump(m, "riemann", "x1=1,x2=0,x3=0,x4=0", SC_FORMAT_TEXT, 1e-12, &out), SC_OK);
  EXPECT_NE(take(out).find("all components zero"), std::string::npos);
  ASSERT_EQ(sc_tensor_dump(m, "ricci", "x1=1,x2=0,x3=0,x4=0", SC_FORMAT_JSON, 1e-12, &out), SC_OK);
  EXPECT_NE(take(out).find("\"components\""), std::string::npos);
  sc_model_free(m);
}
