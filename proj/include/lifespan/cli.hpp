#pragma once

namespace lifespan {

// Full command-line entry point (subcommands: gen, validate, filter, stats,
// calibrate, predict, evaluate). Returns the process exit code:
//   0 all requested artifacts written
//   2 unreadable or malformed input (files, params JSON, feature table)
//   3 dataset validation or data-precondition failure
//   4 baseline language absent from the dataset
//   5 evaluation filter left no projects
int run_cli(int argc, const char* const* argv);

}  // namespace lifespan
