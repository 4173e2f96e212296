#pragma once

namespace nprcli {

/// Exit codes: 0 success, 1 unexpected failure, 2 usage/config/parse,
/// 3 file I/O, 4 numerical failure.
int run(int argc, const char* const* argv);

}  // namespace nprcli
