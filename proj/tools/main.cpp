#include <fstream>
#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  mqg::cli::Result r = mqg::cli::run(args);
  if (!r.diagnostic.empty()) (r.code == 0 ? std::cout : std::cerr) << r.diagnostic << "\n";
  if (r.report.empty()) return r.code;
  if (r.out_path.empty()) {
    std::cout << r.report;
  } else {
    std::ofstream out(r.out_path, std::ios::binary);
    if (!out) {
      std::cerr << "cannot write " << r.out_path << "\n";
      return 2;
    }
    out << r.report;
  }
  return r.code;
}
