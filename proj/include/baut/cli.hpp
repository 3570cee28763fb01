#pragma once

/* Command-line front end. Exit codes: 0 success, 1 failed check (invalid
 * model, INFEASIBLE weights, FAIL certificate), 2 parse or usage error. */

#include <iosfwd>
#include <string>
#include <vector>

namespace baut {

/* args excludes the program name; reports go to out, diagnostics to err. */
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace baut
