#pragma once

#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

namespace lira {

/// One violated axiom instance: which law, at which basis indices.
struct ValidationIssue {
  std::string axiom;
  std::vector<std::size_t> where;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;

  bool ok() const { return issues.empty(); }

  void add(std::string axiom, std::vector<std::size_t> where) {
    issues.push_back({std::move(axiom), std::move(where)});
  }

  void merge(const ValidationReport& other, const std::string& prefix = "") {
    for (const auto& issue : other.issues)
      issues.push_back({prefix + issue.axiom, issue.where});
  }

  bool has(const std::string& axiom) const {
    for (const auto& issue : issues)
      if (issue.axiom == axiom) return true;
    return false;
  }

  std::string summary() const {
    if (ok()) return "valid";
    std::ostringstream os;
    for (const auto& issue : issues) {
      os << issue.axiom << " at (";
      for (std::size_t i = 0; i < issue.where.size(); ++i)
        os << (i ? "," : "") << issue.where[i];
      os << "); ";
    }
    return os.str();
  }
};

}  // namespace lira
