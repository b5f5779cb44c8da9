#pragma once
// Command-line front end of charp-closure-lab.

#include <iosfwd>

namespace ccl::dsl {

/// Subcommands `run FILE`, `repl` and `reproduce --prime P [--slow]
/// [--json] [--log FILE]`. Returns the process exit code: 0 success, 1 a
/// failed verdict or library error, 2 usage or parse error, 3 budget
/// exceeded. `interactive` turns on the REPL prompt.
int run_main(int argc, const char* const* argv, std::istream& in, std::ostream& out,
             std::ostream& err, bool interactive = false);

}  // namespace ccl::dsl
