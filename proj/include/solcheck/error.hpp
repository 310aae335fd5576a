// Copyright 2026 The solcheck Authors. Licensed under the Apache License, Version 2.0.

#pragma once

#include <stdexcept>
#include <string>

namespace solcheck {

enum class ErrorCode {
  UnknownIdentifier,
  SyntaxError,
  ArityError,
  DomainError,
  NotPositiveDefinite,
  OrderExhausted,
  SlotError,
  DimensionError,
  MissingPotential,
  DegeneratePlane,
  ParseError,
  ValidationError,
  EmptyDomain,
  NotApplicable,
  UnknownTensor,
  UnknownCheck,
  UnknownModel,
  IoError,
};

const char* error_code_name(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so the
/// C API can map it without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, int position = -1)
      : std::runtime_error(message), code_(code), position_(position) {}

  ErrorCode code() const noexcept { return code_; }
  /// 0-based character offset for parser errors, -1 otherwise.
  int position() const noexcept { return position_; }

 private:
  ErrorCode code_;
  int position_;
};

}  // namespace solcheck
