// Copyright (c) 2026 the bvmlab authors. All rights reserved.
// Released under the Apache 2.0 license as described in the file LICENSE.
//
// Release gate: runs every advertised guarantee at its stated bound and
// prints one verdict line per criterion. Exits nonzero if any fail. Pass
// --cli <bvmlab binary> and --data <workspace dir> so the reproducibility
// criterion can double-run real commands.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "bvm/checks.hpp"
#include "bvm/hf.hpp"
#include "bvm/report.hpp"
#include "bvm/workspace.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt_seconds(double s) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1fs", s);
    return buf;
}

struct Verdict {
    bool pass = false;
    std::string note;
};

Verdict verdict_of(const bvm::Report& rep) {
    if (rep.clean())
        return {true, std::to_string(rep.lines().size()) + " checks clean"};
    for (const bvm::ReportLine& l : rep.lines())
        if (!l.pass) return {false, "first failure: " + l.claim + " [" + l.instance + "]"};
    return {false, "violations recorded"};
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

} // namespace

int main(int argc, char** argv) {
    std::string cli_path, data_dir;
    for (int i = 1; i + 1 < argc; i += 2) {
        const std::string a = argv[i];
        if (a == "--cli") cli_path = argv[i + 1];
        if (a == "--data") data_dir = argv[i + 1];
    }

    int failures = 0;
    auto line = [&](int id, const Verdict& v, const std::string& what) {
        std::printf("criterion %2d: %s  %s (%s)\n", id, v.pass ? "PASS" : "FAIL", what.c_str(),
                    v.note.c_str());
        std::fflush(stdout);
        if (!v.pass) ++failures;
    };

    bvm::WorkspaceBounds wb;
    wb.rank_bound = 4; // ground sets of rank < 4, as the absoluteness bound asks
    bvm::Workspace ws1({"p"}, wb);
    bvm::Workspace ws2({"p", "q"}, wb);

    {
        const auto t0 = Clock::now();
        bvm::Report rep;
        bvm::check_bvm_laws(ws1, rep);
        bvm::check_bvm_laws(ws2, rep);
        const double s = seconds_since(t0);
        Verdict v = verdict_of(rep);
        if (s >= 60.0) {
            v.pass = false;
            v.note += ", over the 60s budget";
        }
        v.note += ", " + fmt_seconds(s) + " of 60s";
        line(1, v, "equality and membership laws hold exactly on every name of rank <= 2");
    }

    {
        bvm::Report rep;
        bvm::check_forcing_theorem(ws1, 6, rep);
        bvm::check_forcing_theorem(ws2, 6, rep);
        line(2, verdict_of(rep),
             "quotient truth matches value-in-filter for every ultrafilter and sentence");
    }

    {
        bvm::Report rep;
        bvm::check_witness_hypothesis(3, rep);
        line(3, verdict_of(rep), "an accepted finite sum always has an accepted summand");
    }

    {
        bvm::Report rep;
        bvm::check_isomorphism(ws1, rep);
        bvm::check_isomorphism(ws2, rep);
        bvm::check_extensionality_modes(ws1, rep);
        bvm::check_extensionality_modes(ws2, rep);
        line(4, verdict_of(rep),
             "the class map is an isomorphism; extensionality splits raw from induced");
    }

    {
        bvm::Report rep;
        bvm::check_name_absoluteness(ws1, rep);
        bvm::check_name_absoluteness(ws2, rep);
        line(5, verdict_of(rep), "check names interpret to their sets for every rank < 4 set");
    }

    {
        bvm::Report rep;
        bvm::check_fo_stability(ws2, 50, rep);
        line(6, verdict_of(rep),
             "first-order values are unchanged when the witness stratum is enlarged");
    }

    {
        bvm::Report rep;
        bvm::check_reflection(ws1, 2, rep);
        bvm::check_reflection(ws2, 1, rep);
        line(7, verdict_of(rep),
             "quantifier-free formulas reflect everywhere; a non-reflecting existential is caught");
    }

    {
        const auto t0 = Clock::now();
        bvm::Report rep;
        bvm::check_translation_sweep(3, 6, rep);
        const double s = seconds_since(t0);
        Verdict v = verdict_of(rep);
        if (s >= 300.0) {
            v.pass = false;
            v.note += ", over the 300s budget";
        }
        v.note += ", " + fmt_seconds(s) + " of 300s";
        line(8, v,
             "direct and translated interpretations agree on every rank <= 3 universe and class");
    }

    {
        bvm::Report rep;
        bvm::check_canonical_forms(rep);
        const bvm::EnrichmentClass h = bvm::mk_enrichment(ws1.hf, "H", {bvm::hf_empty});
        bvm::check_sentence_ultrafilter(ws1, h, 6, rep);
        line(9, verdict_of(rep),
             "canonical forms match the truth-table oracle; acceptance is an ultrafilter");
    }

    {
        bvm::Report rep;
        bvm::check_zfc_instances(ws1, rep);
        bvm::check_zfc_instances(ws2, rep);
        line(10, verdict_of(rep),
             "pairing, union, replacement, and choice names interpret correctly");
    }

    {
        Verdict v;
        if (cli_path.empty() || data_dir.empty()) {
            v = {false, "needs --cli and --data to double-run commands"};
        } else {
            const std::string demo = data_dir + "/demo.bvw";
            const std::string small = data_dir + "/small.bvw";
            const std::vector<std::string> cmds = {
                cli_path + " value --workspace " + demo + " --mode induced 'n0 = nzero'",
                cli_path + " value --workspace " + demo + " --mode alpha:1 'exists x. x in np'",
                cli_path + " value --workspace " + demo + " --mode fo 'exists x. np in x'",
                cli_path + " check --workspace " + small + " --suite mh",
                cli_path + " check --workspace " + small + " --suite reflect",
                cli_path + " check --workspace " + small + " --suite star-complete",
                cli_path + " quotient --workspace " + demo + " --ultrafilter p --max-rank 2",
            };
            v.pass = true;
            for (std::size_t i = 0; i < cmds.size() && v.pass; ++i) {
                const std::string f1 = "accept_run_a.txt", f2 = "accept_run_b.txt";
                const int r1 = std::system((cmds[i] + " > " + f1 + " 2>&1").c_str());
                const int r2 = std::system((cmds[i] + " > " + f2 + " 2>&1").c_str());
                const std::string out1 = read_file(f1), out2 = read_file(f2);
                if (r1 != 0 || r2 != 0 || out1.empty() || out1 != out2) {
                    v.pass = false;
                    v.note = "command diverged or failed: " + cmds[i];
                }
            }
            if (v.pass) v.note = std::to_string(cmds.size()) + " commands double-run, byte-identical";
        }
        line(11, v, "CLI output is byte-reproducible across runs");
    }

    std::printf("acceptance: %d/11 criteria passed\n", 11 - failures);
    return failures == 0 ? 0 : 1;
}
