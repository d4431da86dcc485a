#pragma once

namespace vgcn::cli {

// Dispatches convert / train / eval / bench / stats. Exit codes: 0 success,
// 1 usage error, 2 data/format error, 3 numerical failure.
int run(int argc, const char* const* argv);

}  // namespace vgcn::cli
