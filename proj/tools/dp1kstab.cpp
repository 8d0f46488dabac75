#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "dp1/cli.hpp"

// Class specs routinely start with '-' ("-K + ..."), which option parsers
// read as a new flag. Gluing each value option to its argument with '=' up
// front sidesteps that without constraining how users quote things.
int main(int argc, char** argv) {
  static const std::set<std::string> valued = {
      "--class", "--scan-dir", "--range",  "--steps",
      "--out",   "--format",   "--normalization",
      "--seed",  "--count",    "--inject-drop-curves",
  };
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (valued.count(a) && i + 1 < argc) {
      args.push_back(a + "=" + argv[i + 1]);
      ++i;
    } else {
      args.push_back(a);
    }
  }
  return dp1::run_cli(args, std::cout, std::cerr);
}
