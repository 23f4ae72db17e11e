#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace nodal {

/// One inequality lhs < rhs (or lhs <= rhs) with its numeric margin rhs - lhs.
struct HypothesisCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool satisfied = false;
  double margin = 0.0;
  // Holds only in the limit (|margin| within rounding of zero); passes with a
  // warning.
  bool limiting = false;

  friend bool operator==(const HypothesisCheck&, const HypothesisCheck&) = default;
};

struct HypothesisChecklist {
  std::vector<HypothesisCheck> checks;

  /// Records lhs < rhs (strict) or lhs <= rhs. With allow_limiting, a
  /// violation within 1e-9 relative passes and is flagged as limiting.
  HypothesisCheck& require_less(std::string name, double lhs, double rhs, bool strict = true,
                                bool allow_limiting = false);

  /// Records a check that could not be evaluated at all.
  void record_failure(std::string name);

  bool all_satisfied() const;
  std::vector<std::string> failed_names() const;
  std::vector<std::string> warnings() const;
  const HypothesisCheck* find(const std::string& name) const;

  friend bool operator==(const HypothesisChecklist&, const HypothesisChecklist&) = default;
};

struct HypothesisFailure : std::runtime_error {
  HypothesisChecklist checklist;
  explicit HypothesisFailure(HypothesisChecklist c);
};

}  // namespace nodal
