#pragma once

#include "qvac/constants.hpp"

#include <string>
#include <vector>

namespace qvac {

/// Outcome of checking one model equation for dimensional consistency.
struct DimensionCheck {
  std::string name;
  std::string formula;
  std::string expected;  // canonical unit of the left-hand side
  std::string actual;    // canonical unit of the evaluated right-hand side
  bool passed = false;
  std::string detail;    // error text when evaluation itself failed
};

/// Evaluates every equation of the model with representative inputs
/// (electron pair, gap ratio 2, E = 1 V/m, B = 1 T) through Quantity
/// algebra and compares the result's dimension with the declared one.
/// Never throws for bad constants; failures become report entries.
std::vector<DimensionCheck> run_dimension_checks(const ConstantRegistry& registry);

}  // namespace qvac
