// Copyright (c) 2026 the bvmlab authors. All rights reserved.
// Released under the Apache 2.0 license as described in the file LICENSE.
#pragma once

namespace bvm {

// Batch front-end: parses arguments, loads the workspace, runs one command
// (value, check, or quotient), and returns the process exit code. Exit codes:
// 0 clean, 1 violation found, 2 input error, 3 bounds exceeded. Output is
// deterministic for identical inputs.
int run_cli(int argc, const char* const* argv);

} // namespace bvm
