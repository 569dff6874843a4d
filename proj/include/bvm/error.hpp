// Copyright (c) 2026 the bvmlab authors. All rights reserved.
// Released under the Apache 2.0 license as described in the file LICENSE.
#pragma once

#include <stdexcept>
#include <string>

namespace bvm {

// Exit codes shared by the library and the command line driver.
enum class errc : int {
    ok        = 0,
    violation = 1, // a check suite found a counterexample
    input     = 2, // malformed workspace, formula, or arguments
    bounds    = 3, // a requested enumeration exceeds the configured caps
};

class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& msg) : std::runtime_error(msg), m_code(code) {}
    errc code() const { return m_code; }

private:
    errc m_code;
};

[[noreturn]] inline void fail_input(const std::string& msg) { throw Error(errc::input, msg); }
[[noreturn]] inline void fail_bounds(const std::string& msg) { throw Error(errc::bounds, msg); }

} // namespace bvm
