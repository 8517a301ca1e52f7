// Command-line front end: simulate | retrieve | sweep | tune.
//
// run() is the whole program behind a testable seam; it never terminates
// the process. Exit codes: 0 success, 2 validation error, 3 resource cap,
// 4 I/O failure.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qam::cli {

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qam::cli
