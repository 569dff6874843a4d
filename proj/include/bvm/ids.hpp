// Copyright (c) 2026 the bvmlab authors. All rights reserved.
// Released under the Apache 2.0 license as described in the file LICENSE.
#pragma once

#include <cstdint>

namespace bvm {

// Pool-relative handles. Like HfId these are only meaningful together with
// the pool that issued them.
using NameId = std::uint32_t;
using TildeId = std::uint32_t;

} // namespace bvm
