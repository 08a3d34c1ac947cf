#include <cstdio>
#include <string>
#include <vector>

#include "lie/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string format = "json";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--format" && i + 1 < args.size()) format = args[i + 1];
    if (args[i].rfind("--format=", 0) == 0) format = args[i].substr(9);
  }
  lie::CommandResult result = lie::run(args);
  std::fputs(lie::render_payload(result, format).c_str(), stdout);
  return lie::cli_exit_code(result);
}
