#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace flopgw::cli {

/// Exit statuses of run().
enum ExitCode : int { Ok = 0, InternalFailure = 1, ValidationFailure = 2 };

/// Parses the command line and runs one subcommand. The report (JSON, or CSV
/// for graph listings) goes to `out`; error objects are JSON on `out` too so
/// callers only need one stream. `err` receives CLI usage text.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Same, with argv[0] omitted.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace flopgw::cli
