#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ppnear::cli {

/// Runs one `ppnear` command line (without the program name).
///
/// Exit codes: 0 success or affirmative verdict, 1 negative verdict,
/// 2 usage, parse or validation error (one line on `err`).
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace ppnear::cli
