#pragma once

namespace scd::cli {

/// Command dispatch for the scd tool. Returns the process exit code:
/// 0 success, 1 usage or validation error, 2 I/O or data error.
int run(int argc, const char* const* argv);

} // namespace scd::cli
