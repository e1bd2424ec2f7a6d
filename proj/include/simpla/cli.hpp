#pragma once

#include <iosfwd>
#include <string>
#include <vector>

// Command-line front end.  Kept as a library function so tests can drive it
// with captured streams; tools/main.cpp is the only real entry point.

namespace simpla::cli {

// `args` excludes the program name.  Results go to `out`, diagnostics to
// `err`.  Returns the exit code: 0 for success / an affirmative answer,
// 1 for a negative answer, 2 for usage or input errors.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace simpla::cli
