#pragma once

#include <string>
#include <vector>

namespace hamtrio::hamops {

struct ConditionResult {
  std::string name;
  bool passed = true;
  std::vector<int> indices;  // 1-based index tuple of the first failure
  std::string residual;      // first nonzero residual, as an expression
};

// Per-condition verdicts; overall pass iff every condition passes.
struct ConditionReport {
  std::string subject;
  std::vector<ConditionResult> conditions;
  std::vector<std::string> warnings;
  // Set when a compatibility check ran on an operator that failed its own
  // Hamiltonianity precondition (checks warn rather than abort).
  bool not_hamiltonian = false;

  bool conditions_pass() const {
    for (auto& c : conditions)
      if (!c.passed) return false;
    return true;
  }
  bool overall() const { return conditions_pass() && !not_hamiltonian; }

  const ConditionResult* find(const std::string& name) const {
    for (auto& c : conditions)
      if (c.name == name) return &c;
    return nullptr;
  }

  void append(const ConditionReport& sub, const std::string& prefix) {
    for (auto c : sub.conditions) {
      c.name = prefix + "." + c.name;
      conditions.push_back(std::move(c));
    }
    for (auto& w : sub.warnings) warnings.push_back(prefix + ": " + w);
    not_hamiltonian = not_hamiltonian || sub.not_hamiltonian;
  }
};

}  // namespace hamtrio::hamops
