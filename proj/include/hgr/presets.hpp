#pragma once

#include <string>
#include <vector>

#include "hgr/report_json.hpp"

namespace hgr {

struct PresetInfo {
  int id = 0;
  std::string title;
};

struct PresetResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string summary;  // one line, margins included
  Json details;
  double seconds = 0.0;
};

/// The ten acceptance criteria, in order.
std::vector<PresetInfo> preset_list();

/// Runs one criterion. Never throws for numerical failures: those come back
/// as passed = false with the error in the summary. Throws InvalidParams for
/// an unknown id.
PresetResult run_preset(int id);

}  // namespace hgr
