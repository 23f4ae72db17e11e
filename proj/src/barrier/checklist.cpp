#include "nodal/checklist.hpp"

#include <algorithm>
#include <cmath>

namespace nodal {
namespace {

constexpr double kLimitingRelTol = 1e-9;

std::string join(const std::vector<std::string>& names) {
  std::string out;
  for (const auto& n : names) out += (out.empty() ? "" : ", ") + n;
  return out;
}

}  // namespace

HypothesisCheck& HypothesisChecklist::require_less(std::string name, double lhs, double rhs, bool strict,
                                                   bool allow_limiting) {
  HypothesisCheck c;
  c.name = std::move(name);
  c.lhs = lhs;
  c.rhs = rhs;
  c.margin = rhs - lhs;
  c.satisfied = strict ? lhs < rhs : lhs <= rhs;
  if (allow_limiting && std::fabs(c.margin) <= kLimitingRelTol * std::max(std::fabs(lhs), std::fabs(rhs))) {
    c.satisfied = true;
    c.limiting = true;
  }
  checks.push_back(std::move(c));
  return checks.back();
}

void HypothesisChecklist::record_failure(std::string name) {
  HypothesisCheck c;
  c.name = std::move(name);
  checks.push_back(std::move(c));
}

bool HypothesisChecklist::all_satisfied() const {
  for (const auto& c : checks)
    if (!c.satisfied) return false;
  return true;
}

std::vector<std::string> HypothesisChecklist::failed_names() const {
  std::vector<std::string> out;
  for (const auto& c : checks)
    if (!c.satisfied) out.push_back(c.name);
  return out;
}

std::vector<std::string> HypothesisChecklist::warnings() const {
  std::vector<std::string> out;
  for (const auto& c : checks)
    if (c.limiting) out.push_back(c.name + " holds only as a limiting case");
  return out;
}

const HypothesisCheck* HypothesisChecklist::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

HypothesisFailure::HypothesisFailure(HypothesisChecklist c)
    : std::runtime_error("hypothesis check failed: " + join(c.failed_names())), checklist(std::move(c)) {}

}  // namespace nodal
