#pragma once

// Command-line surface: subcommands telescope, independent, zeilberger,
// products, eval, oracle and tower-check.

#include <iosfwd>

namespace telecert {

// Exit codes: 0 verdict produced, 1 usage error, 2 unsupported input,
// 3 internal verification failure.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace telecert
