// Copyright (c) 2026 the bvmlab authors. All rights reserved.
// Released under the Apache 2.0 license as described in the file LICENSE.
#include "doctest.h"

#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "bvm/report.hpp"

using namespace bvm;

TEST_CASE("reports count violations") {
    Report rep;
    CHECK(rep.clean());
    CHECK(rep.violation_count() == 0);
    rep.add("claim a", "x", "1", "1", true, "n=3");
    CHECK(rep.clean());
    rep.add("claim b", "y", "1", "0", false, "n=3");
    rep.add("claim c", "", "", "", true, "");
    CHECK(!rep.clean());
    CHECK(rep.violation_count() == 1);
    REQUIRE(rep.lines().size() == 3);
    CHECK(rep.lines()[1].claim == "claim b");
    CHECK(!rep.lines()[1].pass);
}

TEST_CASE("the wire format is one record per line plus a footer") {
    Report rep;
    rep.add("laws hold", "pair (a,b)", "[p]", "[p]", true, "all pairs, n=27");
    rep.add("laws hold", "pair (c,d)", "[p]", "[]", false, "all pairs, n=27");
    std::ostringstream os;
    rep.write(os);

    std::vector<std::string> lines;
    std::istringstream in(os.str());
    for (std::string l; std::getline(in, l);)
        lines.push_back(l);
    REQUIRE(lines.size() == 3);

    nlohmann::json r0 = nlohmann::json::parse(lines[0]);
    CHECK(r0["claim"] == "laws hold");
    CHECK(r0["instance"] == "pair (a,b)");
    CHECK(r0["lhs"] == "[p]");
    CHECK(r0["rhs"] == "[p]");
    CHECK(r0["verdict"] == "pass");
    CHECK(r0["bound"] == "all pairs, n=27");
    nlohmann::json r1 = nlohmann::json::parse(lines[1]);
    CHECK(r1["verdict"] == "fail");
    CHECK(lines[2] == "# 2 records, 1 violations");

    // fields come out in a fixed order so the output is byte reproducible
    CHECK(lines[0].find("\"claim\"") < lines[0].find("\"instance\""));
    CHECK(lines[0].find("\"instance\"") < lines[0].find("\"verdict\""));
}

TEST_CASE("an empty report still writes its footer") {
    Report rep;
    std::ostringstream os;
    rep.write(os);
    CHECK(os.str() == "# 0 records, 0 violations\n");
}
