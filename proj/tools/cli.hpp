#pragma once

#include <string>
#include <vector>

namespace mqg::cli {

struct Result {
  int code = 0;  // 0 all checks pass, 1 a check failed, 2 input error
  std::string report;    // JSON, empty on input errors
  std::string out_path;  // --out, empty for stdout
  std::string diagnostic;
};

// args exclude the program name
Result run(const std::vector<std::string>& args);

}  // namespace mqg::cli
