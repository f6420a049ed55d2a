#pragma once

#include <iosfwd>

namespace wulff {

// Entry point behind the wulffflow executable. Exit codes: 0 success,
// 1 parse/validation error, 2 runtime failure.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace wulff
