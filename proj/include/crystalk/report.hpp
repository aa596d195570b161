#pragma once

#include "crystalk/crystal.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace crystalk {

struct DegreeWindow {
  long lo = 0;
  long hi = 0;
};

struct ReportOptions {
  std::optional<DegreeWindow> window;  // overrides every per-theory default window
  bool parallel = false;
  bool run_oracles = false;  // cross-check closed forms against the supplied rho
};

// Every theorem evaluated on a degree window; group values are evaluated
// (point-group summands replaced by their table values) and normalized.
struct TheoremReport {
  GammaDescriptor descriptor;
  FGAbelianGroup cokernel;
  FGAbelianGroup abelianization;
  std::map<std::string, Integer> scalars;
  std::map<std::string, std::map<long, GroupExpression>> groups;
  std::map<std::string, std::string> summary;
  std::vector<std::string> warnings;
};

TheoremReport build_report(const GammaDescriptor& g, const ReportOptions& opts = {});

// Canonical JSON: sorted keys, two-space indent, integers only.
std::string render_json(const TheoremReport& r);
std::string render_text(const TheoremReport& r);

}  // namespace crystalk
