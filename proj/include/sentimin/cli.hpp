#pragma once

namespace sentimin::cli {

// Full command-line entry point (subcommands: ingest, train, evaluate,
// classify, compare). Returns the process exit code: 0 success, 2 I/O,
// 3 configuration, 4 data shape.
int run(int argc, const char* const* argv);

} // namespace sentimin::cli
