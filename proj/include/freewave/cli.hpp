#pragma once

// Command-line front end. `run_cli` is the whole program minus main() so the
// tests can drive it in-process.
//
// Exit codes: 0 ok, 1 numerical failure, 2 usage error, 3 schema error
// (bad reaction, bad config file), 4 infeasible or out-of-domain request.
// Failures print one line of JSON on `err`.

#include <iosfwd>

namespace freewave {

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace freewave
