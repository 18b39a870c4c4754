#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace germain::cli {

inline constexpr const char* schema_version = "1";

enum ExitCode : int {
	Success = 0,
	CheckFailed = 1,
	UsageFailure = 2,
	BudgetExceeded = 3,
};

// Runs one invocation; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Re-derives the payload of a JSON envelope through the library and checks every
// witness and listed value. Returns false on any mismatch.
bool reverify(const nlohmann::json& envelope);

} // namespace germain::cli
