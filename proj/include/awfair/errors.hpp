#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace awfair {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidValuation : Error {
  using Error::Error;
};

struct DimensionError : Error {
  using Error::Error;
};

struct InfeasibleStrategySpace : Error {
  using Error::Error;
};

/// Thrown before any profile is evaluated, so there are never partial results
/// to report; `required` tells the caller how large the budget must be.
struct SearchBudgetExceeded : Error {
  SearchBudgetExceeded(std::uint64_t required_profiles, std::uint64_t budget_profiles)
      : Error("search needs " + std::to_string(required_profiles) + " profiles, budget is " +
              std::to_string(budget_profiles)),
        required(required_profiles),
        budget(budget_profiles) {}
  std::uint64_t required;
  std::uint64_t budget;
};

struct ConstructionFailed : Error {
  using Error::Error;
};

struct NotApplicable : Error {
  using Error::Error;
};

struct ParseError : Error {
  explicit ParseError(const std::string& what, int line_number = 0, std::string field_name = {})
      : Error(line_number > 0 ? "line " + std::to_string(line_number) +
                                    (field_name.empty() ? "" : " (" + field_name + ")") + ": " + what
              : field_name.empty() ? what
                                   : field_name + ": " + what),
        line(line_number),
        field(std::move(field_name)) {}
  int line;
  std::string field;
};

}  // namespace awfair
