#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace frobsplit::cli {

// Full command-line surface. Writes requested output to `out`, diagnostics
// and error JSON to `err`. Returns 0 on success, 1 on usage errors, 2 on
// mathematical refusals.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace frobsplit::cli
