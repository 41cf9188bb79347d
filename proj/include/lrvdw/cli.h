#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lrvdw::cli {

/// Entry point shared by the binary and the tests.  args excludes argv[0].
/// Exit codes: 0 success, 1 validation or physics failure, 2 I/O failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace lrvdw::cli
