// Copyright (c) 2026 the bvmlab authors. All rights reserved.
// Released under the Apache 2.0 license as described in the file LICENSE.
#include "bvm/report.hpp"

#include <ostream>

#include "json.hpp"

namespace bvm {

void Report::add(ReportLine line) {
    if (!line.pass)
        ++m_violations;
    m_lines.push_back(std::move(line));
}

void Report::add(std::string claim, std::string instance, std::string lhs, std::string rhs,
                 bool pass, std::string bound) {
    add(ReportLine{std::move(claim), std::move(instance), std::move(lhs), std::move(rhs), pass,
                   std::move(bound)});
}

void Report::write(std::ostream& os) const {
    for (const ReportLine& line : m_lines) {
        nlohmann::ordered_json rec;
        rec["claim"] = line.claim;
        rec["instance"] = line.instance;
        rec["lhs"] = line.lhs;
        rec["rhs"] = line.rhs;
        rec["verdict"] = line.pass ? "pass" : "fail";
        rec["bound"] = line.bound;
        os << rec.dump() << '\n';
    }
    os << "# " << m_lines.size() << " records, " << m_violations << " violations\n";
}

} // namespace bvm
