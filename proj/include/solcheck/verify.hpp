// Copyright 2026 The solcheck Authors. Licensed under the Apache License, Version 2.0.

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "solcheck/divchain.hpp"
#include "solcheck/models.hpp"

namespace solcheck {

enum class Tier { A, B, C };

char tier_letter(Tier t) noexcept;
/// Accepts "A", "B", "C" (any case). Throws UnknownCheck.
Tier parse_tier(std::string_view s);

inline constexpr double kDefaultTolerance = 1e-8;

/// One evaluation at one point. residual is the normalized gap
/// max|L - R| / (1 + max(max|L|, max|R|)); for inequalities it is the size
/// of the violation (0 when satisfied).
struct CheckValue {
  double residual = 0.0;
  double magnitude = 0.0;  // max(max|L|, max|R|)
  double guard = 0.0;      // size of the check's reference term
};

struct CheckSpec {
  std::string id;
  Tier tier = Tier::A;
  std::string description;
  bool requires_potential = false;
  int min_dim = 2;
  int exact_dim = 0;  // 0: any
  int metric_order = 2;
  std::function<CheckValue(PointGeometry&)> evaluate;

  /// Empty when applicable, else the reason.
  std::string inapplicable_reason(const ModelSpec& m) const;
};

/// Registry sorted by id.
const std::vector<CheckSpec>& list_checks();
/// Throws UnknownCheck.
const CheckSpec& find_check(std::string_view id);
/// Id of the Tier C soliton gate row.
inline constexpr const char* kSolitonGateId = "C.soliton_gate";

enum class CheckStatus { Evaluated, NotApplicable, NotASoliton, Error };
const char* check_status_name(CheckStatus s) noexcept;

struct CheckReport {
  std::string check_id;
  std::string model;
  CheckStatus status = CheckStatus::Evaluated;
  std::size_t points = 0;
  double max_residual = 0.0;
  double mean_residual = 0.0;
  Point argmax_point;
  bool pass = false;
  double tolerance = kDefaultTolerance;
  double max_magnitude = 0.0;
  double max_guard = 0.0;
  std::string message;

  /// Rows that count toward the exit status.
  bool counts() const noexcept { return status == CheckStatus::Evaluated || status == CheckStatus::Error; }
};

/// Runs the given checks on one plan. Points are processed in parallel with
/// `threads` workers (0: hardware concurrency); results do not depend on it.
/// Tier C ids first pass the soliton gate; on failure they collapse into one
/// NotASoliton row. Reports are sorted by id.
std::vector<CheckReport> run_checks(const std::vector<std::string>& ids, const ModelSpec& m,
                                    const SamplePlan& plan, double tol = kDefaultTolerance,
                                    unsigned threads = 0);
/// Throws NotApplicable when the check does not apply to the model.
CheckReport run_check(std::string_view id, const ModelSpec& m, const SamplePlan& plan,
                      double tol = kDefaultTolerance);
std::vector<CheckReport> run_tier(Tier tier, const ModelSpec& m, const SamplePlan& plan,
                                  double tol = kDefaultTolerance, unsigned threads = 0);

bool all_passed(const std::vector<CheckReport>& reports) noexcept;

std::string render_reports_json(const std::vector<CheckReport>& reports);
std::string render_reports_text(const std::vector<CheckReport>& reports);

enum class Verdict { Gaussian_R4, R2xS2, RxS3, Einstein, NotRigidOrUnknown, NotASoliton };
const char* verdict_name(Verdict v) noexcept;
/// True for the four rigid model classes.
bool verdict_definite(Verdict v) noexcept;

struct ClassificationResult {
  std::string model;
  Verdict verdict = Verdict::NotRigidOrUnknown;
  double scalar_ratio = 0.0;              // mean R / lambda
  std::optional<int> snapped_ratio;       // nearest allowed value
  std::vector<double> ricci_eigenvalues;  // mean sorted eigenvalues / lambda
  double gate_residual = 0.0;
  double max_grad_scalar = 0.0;
  double ric_sq_residual = 0.0;
  double max_eigen_gap = 0.0;
  std::string reason;
};

/// Throws DimensionError (n != 4). A model without a potential yields NotASoliton.
ClassificationResult classify_dim4(const ModelSpec& m, const SamplePlan& plan,
                                   double tol = kDefaultTolerance);

std::string render_classification_json(const ClassificationResult& c);
std::string render_classification_text(const ClassificationResult& c);

}  // namespace solcheck
