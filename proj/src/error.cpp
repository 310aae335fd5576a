// Copyright 2026 The solcheck Authors. Licensed under the Apache License, Version 2.0.

#include "solcheck/error.hpp"

namespace solcheck {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::UnknownIdentifier: return "UnknownIdentifier";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::ArityError: return "ArityError";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::OrderExhausted: return "OrderExhausted";
    case ErrorCode::SlotError: return "SlotError";
    case ErrorCode::DimensionError: return "DimensionError";
    case ErrorCode::MissingPotential: return "MissingPotential";
    case ErrorCode::DegeneratePlane: return "DegeneratePlane";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::EmptyDomain: return "EmptyDomain";
    case ErrorCode::NotApplicable: return "NotApplicable";
    case ErrorCode::UnknownTensor: return "UnknownTensor";
    case ErrorCode::UnknownCheck: return "UnknownCheck";
    case ErrorCode::UnknownModel: return "UnknownModel";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace solcheck
