// Copyright (c) 2026 the bvmlab authors. All rights reserved.
// Released under the Apache 2.0 license as described in the file LICENSE.
#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace bvm {

// One structured record: a claim, the instance it was checked on, the two
// compared values, the verdict, and the bound the check ran under. Suites
// emit one summary record per claim and, on failure, the first violating
// instance in canonical enumeration order.
struct ReportLine {
    std::string claim;
    std::string instance;
    std::string lhs;
    std::string rhs;
    bool pass = false;
    std::string bound;
};

class Report {
public:
    void add(ReportLine line);
    void add(std::string claim, std::string instance, std::string lhs, std::string rhs,
             bool pass, std::string bound);

    const std::vector<ReportLine>& lines() const { return m_lines; }
    std::size_t violation_count() const { return m_violations; }
    bool clean() const { return m_violations == 0; }

    // One structured record per line, then a human-readable footer
    // (prefixed with '#' so record parsers can skip it).
    void write(std::ostream& os) const;

private:
    std::vector<ReportLine> m_lines;
    std::size_t m_violations = 0;
};

} // namespace bvm
