#pragma once

namespace mch::cli {

// Runs one subcommand. Exit codes: 0 success, 2 validation/usage error,
// 3 numerical failure.
int dispatch(int argc, const char* const* argv);

}  // namespace mch::cli
