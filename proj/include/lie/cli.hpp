#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace lie {

// Result of one CLI invocation.  `status` is "ok" or "error"; error payloads
// carry {"code", "message"} with the code taken from the module error names.
struct CommandResult {
  std::string status;
  nlohmann::ordered_json payload;
  long timing_ms = 0;
};

// Parses and dispatches one command line (without the program name).  Never
// throws: parse failures become UsageError results, module failures carry
// their own error codes.
CommandResult run(const std::vector<std::string>& argv);

// 0 for ok, 2 for usage errors, 1 for any other error.
int cli_exit_code(const CommandResult& result);

// Serializes the payload: pretty JSON, or flattened key,value rows for "csv".
std::string render_payload(const CommandResult& result, const std::string& format);

}  // namespace lie
