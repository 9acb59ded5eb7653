#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace welfarelens::cli {

// Runs one command given argv-style tokens (program name excluded), writing
// the report to `out` and diagnostics to `err`. Returns the process exit
// code: 0 on success, 1 on usage or input errors, 2 when `verify` finds a
// failing certificate.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace welfarelens::cli
