// Runs every acceptance criterion and prints one line per criterion.
//   acceptance [--json FILE] [ID...]
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <vector>

#include "hgr/presets.hpp"

int main(int argc, char** argv) {
  std::vector<int> ids;
  std::string json_path;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--json" && i + 1 < argc) {
      json_path = argv[++i];
    } else {
      ids.push_back(std::atoi(arg.c_str()));
    }
  }
  if (ids.empty()) {
    for (const auto& p : hgr::preset_list()) ids.push_back(p.id);
  }

  int failures = 0;
  hgr::Json all = hgr::Json::array();
  for (int id : ids) {
    const hgr::PresetResult r = hgr::run_preset(id);
    std::printf("[%s] %2d %-36s %s (%.1fs)\n", r.passed ? "PASS" : "FAIL", r.id, r.title.c_str(),
                r.summary.c_str(), r.seconds);
    std::fflush(stdout);
    failures += r.passed ? 0 : 1;
    all.push_back({{"id", r.id}, {"title", r.title}, {"passed", r.passed}, {"summary", r.summary},
                   {"seconds", r.seconds}, {"details", r.details}});
  }
  if (!json_path.empty()) std::ofstream(json_path) << all.dump(2) << '\n';
  std::printf("%zu criteria, %d failed\n", ids.size(), failures);
  return failures == 0 ? 0 : 1;
}
