#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bma/convexity.hpp"

namespace bma::verify {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::vector<std::string> details;  // one line per sub-check
};

struct VerifyOptions {
  std::optional<std::string> map_spec;  // narrow criterion 4 to one map
  std::optional<GridSpec> grid;
};

struct CriterionInfo {
  int id;
  const char* name;
  const char* summary;
};

const std::vector<CriterionInfo>& catalog();

// token: numeric id or a name/alias like "thm2.2"; returns 0 if unknown
int resolve_id(const std::string& token);

CriterionResult run_criterion(int id, const VerifyOptions& opts = {});

}  // namespace bma::verify
