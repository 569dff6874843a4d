// Copyright (c) 2026 the bvmlab authors. All rights reserved.
// Released under the Apache 2.0 license as described in the file LICENSE.
#include "bvm/cli.hpp"

int main(int argc, char** argv) { return bvm::run_cli(argc, argv); }
