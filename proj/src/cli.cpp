// Copyright (c) 2026 the bvmlab authors. All rights reserved.
// Released under the Apache 2.0 license as described in the file LICENSE.
#include "bvm/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "bvm/checks.hpp"
#include "bvm/error.hpp"
#include "bvm/quotient.hpp"
#include "bvm/report.hpp"
#include "bvm/values.hpp"
#include "bvm/workspace.hpp"

namespace bvm {

namespace {

void emit(const std::string& text, const std::string& out_path) {
    std::cout << text << std::flush;
    if (out_path.empty()) return;
    std::ofstream f(out_path, std::ios::binary);
    if (!f) fail_input("cannot open output file " + out_path);
    f << text;
}

unsigned parse_alpha_suffix(const std::string& mode) {
    const std::string digits = mode.substr(6); // past "alpha:"
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
        fail_input("bad mode " + mode + ", expected alpha:N");
    return unsigned(std::stoul(digits));
}

int cmd_value(Workspace& ws, const std::string& formula_text, const std::string& mode,
              const std::string& out_path) {
    ParseContext parse_ctx = ws.parse_context(mode != "star");
    const FormulaPtr f = parse_formula(formula_text, parse_ctx);
    ValueCtx ctx(ws);
    Report rep;
    const std::string rendered = print_formula(*f, ws.print_context());

    BoolElem v;
    if (mode == "star") {
        v = ctx.value_star(*f);
        rep.add("raw value", rendered, to_string(v), "", true, "atoms by entry lookup");
    } else if (mode == "induced") {
        v = ctx.value_qf(*f);
        rep.add("induced value", rendered, to_string(v), "", true, "atoms by recursion");
    } else if (mode == "fo") {
        const unsigned alpha =
            ws.bounds.max_name_rank > 0 ? ws.bounds.max_name_rank - 1 : 0;
        const FoResult r = ctx.value_fo(*f, alpha);
        v = r.value;
        rep.add("stratified value", rendered, to_string(r.value), "",
                true, "witnesses of rank <= " + std::to_string(alpha));
        rep.add("stability probe", rendered, to_string(r.value), to_string(r.next_value),
                r.stable, "witnesses of rank <= " + std::to_string(alpha + 1));
    } else if (mode.rfind("alpha:", 0) == 0) {
        const unsigned alpha = parse_alpha_suffix(mode);
        v = ctx.value_alpha(*f, alpha);
        rep.add("stratified value", rendered, to_string(v), "", true,
                "witnesses of rank <= " + std::to_string(alpha));
    } else {
        fail_input("unknown mode " + mode + ", expected star, induced, fo, or alpha:N");
    }

    std::ostringstream os;
    os << to_string(v) << "\n";
    rep.write(os);
    emit(os.str(), out_path);
    return 0;
}

int cmd_check(Workspace& ws, const std::string& suite, const std::string& out_path) {
    Report rep;
    const unsigned size_cap = std::min(ws.bounds.max_formula_size, 16u);
    if (suite == "bvm-laws") {
        check_bvm_laws(ws, rep);
    } else if (suite == "los") {
        check_forcing_theorem(ws, std::min(size_cap, 6u), rep);
    } else if (suite == "iso") {
        check_isomorphism(ws, rep);
    } else if (suite == "ext") {
        check_extensionality_modes(ws, rep);
    } else if (suite == "reflect") {
        const unsigned depth = ws.algebra->atom_count() >= 2 ? 1u : 2u;
        check_reflection(ws, depth, rep);
    } else if (suite == "star-complete") {
        check_star_completeness(ws, rep);
    } else if (suite == "mh") {
        const EnrichmentClass* h = ws.enrichment("H");
        if (h == nullptr)
            fail_input("suite mh needs an [enrich] class named H in the workspace");
        check_translation(ws, *h, std::min(size_cap, 6u), rep);
        check_sentence_ultrafilter(ws, *h, std::min(size_cap, 6u), rep);
    } else {
        fail_input("unknown suite " + suite +
                   ", expected los, bvm-laws, iso, ext, reflect, star-complete, or mh");
    }

    std::ostringstream os;
    rep.write(os);
    emit(os.str(), out_path);
    return rep.clean() ? 0 : 1;
}

int cmd_quotient(Workspace& ws, const std::string& atom_label, unsigned max_rank,
                 const std::string& out_path) {
    const std::vector<Ultrafilter> ultras = enumerate_ultrafilters(*ws.algebra);
    const Ultrafilter* g = nullptr;
    for (const Ultrafilter& u : ultras)
        if (u.label() == atom_label) g = &u;
    if (g == nullptr) fail_input("unknown ultrafilter atom " + atom_label);

    const std::vector<NameId> names = ws.name_stratum(max_rank);
    const PairMatrices pm = compute_pair_matrices(ws, names, true);
    ValueCtx ctx(ws);
    ctx.attach_matrices(&pm);
    const QuotientModel q = quotient_model(ctx, *g, names, QuotientMode::induced);

    std::ostringstream os;
    os << "ultrafilter U_" << g->label() << "\n";
    os << "names " << names.size() << " (rank <= " << max_rank << ")\n";
    os << "classes " << q.classes.size() << "\n";
    for (std::size_t c = 0; c < q.classes.size(); ++c) {
        os << "class " << c << ": image " << ws.hf.repr(ctx.interpret(*g, q.classes[c][0]))
           << "; members";
        const std::size_t shown = std::min<std::size_t>(q.classes[c].size(), 8);
        for (std::size_t m = 0; m < shown; ++m) os << " " << ws.names->repr(q.classes[c][m]);
        if (q.classes[c].size() > shown) os << " +" << (q.classes[c].size() - shown) << " more";
        os << "\n";
    }
    os << "E:";
    for (std::size_t a = 0; a < q.classes.size(); ++a)
        for (std::size_t b = 0; b < q.classes.size(); ++b)
            if (q.edge(a, b)) os << " [" << a << " in " << b << "]";
    os << "\n";
    os << (q.equivalence_ok ? "equivalence ok" : "equivalence violated") << "\n";
    emit(os.str(), out_path);
    return q.equivalence_ok ? 0 : 1;
}

} // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"boolean-valued model laboratory"};
    app.require_subcommand(1);

    std::string ws_path, out_path;
    std::string mode = "induced";
    std::string formula_text;
    std::string suite;
    std::string atom_label;
    unsigned max_rank = 1;

    CLI::App* value = app.add_subcommand("value", "evaluate the value of a formula");
    value->add_option("--workspace", ws_path, "workspace file")->required();
    value->add_option("--out", out_path, "also write the output here");
    value->add_option("--mode", mode, "star, induced, fo, or alpha:N");
    value->add_option("formula", formula_text, "formula text")->required();

    CLI::App* check = app.add_subcommand("check", "run a check suite");
    check->add_option("--workspace", ws_path, "workspace file")->required();
    check->add_option("--out", out_path, "also write the output here");
    check->add_option("--suite", suite,
                      "los, bvm-laws, iso, ext, reflect, star-complete, or mh")
        ->required();

    CLI::App* quot = app.add_subcommand("quotient", "list a quotient model");
    quot->add_option("--workspace", ws_path, "workspace file")->required();
    quot->add_option("--out", out_path, "also write the output here");
    quot->add_option("--ultrafilter", atom_label, "generating atom")->required();
    quot->add_option("--max-rank", max_rank, "name stratum to quotient (default 1)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : static_cast<int>(errc::input);
    }

    try {
        std::unique_ptr<Workspace> ws = load_workspace(ws_path);
        if (value->parsed()) return cmd_value(*ws, formula_text, mode, out_path);
        if (check->parsed()) return cmd_check(*ws, suite, out_path);
        return cmd_quotient(*ws, atom_label, max_rank, out_path);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(errc::input);
    }
}

} // namespace bvm
