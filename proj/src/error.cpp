#include "edgesync/error.hpp"

namespace edgesync {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonPositiveExtent: return "NonPositiveExtent";
    case ErrorCode::ZeroResolution: return "ZeroResolution";
    case ErrorCode::DegenerateSpec: return "DegenerateSpec";
    case ErrorCode::NonPositiveLoad: return "NonPositiveLoad";
    case ErrorCode::ZeroRate: return "ZeroRate";
    case ErrorCode::NoRenderBudget: return "NoRenderBudget";
    case ErrorCode::NoComputeBudget: return "NoComputeBudget";
    case ErrorCode::InfeasibleDeadline: return "InfeasibleDeadline";
    case ErrorCode::ComputeExhausted: return "ComputeExhausted";
    case ErrorCode::SearchSpaceTooLarge: return "SearchSpaceTooLarge";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

}  // namespace edgesync
