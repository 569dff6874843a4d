// Copyright (c) 2026 the bvmlab authors. All rights reserved.
// Released under the Apache 2.0 license as described in the file LICENSE.
#pragma once

#include <deque>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "bvm/boolean_algebra.hpp"
#include "bvm/formula.hpp"
#include "bvm/hf.hpp"
#include "bvm/names.hpp"
#include "bvm/tilde.hpp"

namespace bvm {

struct WorkspaceBounds {
    unsigned rank_bound = 3;        // ground universe: sets of rank < this
    unsigned max_name_rank = 2;     // deepest name stratum checks may walk
    std::size_t max_stratum = 4000; // cap on any enumerated stratum
    unsigned max_formula_size = 16; // cap for generated formula suites
    unsigned max_tilde_level = 2;   // deepest tilde stratum
    std::size_t def_table_cap = 2000000;
};

// Owns every pool a session works with. Not movable (the pools hold mutexes),
// so it is handed around by reference or unique_ptr.
class Workspace {
public:
    Workspace(std::vector<std::string> atoms, WorkspaceBounds bounds);
    Workspace(const Workspace&) = delete;
    Workspace& operator=(const Workspace&) = delete;

    std::shared_ptr<const BoolAlg> algebra;
    WorkspaceBounds bounds;
    HfPool hf;
    Universe universe;
    std::unique_ptr<NamePool> names;
    std::unique_ptr<TildePool> tildes;
    std::vector<EnrichmentClass> enrichments;

    std::vector<std::pair<std::string, NameId>> name_decls; // declaration order
    std::map<std::string, NameId> name_index;
    std::vector<std::pair<std::string, TildeId>> tilde_decls;
    std::map<std::string, TildeId> tilde_index;

    // Cumulative stratum of names of rank <= alpha, cached. Throws
    // errc::bounds past the stratum cap. Returned references stay valid while
    // the workspace lives (the cache is a deque, so later growth does not
    // move earlier strata). Not safe against concurrent callers.
    const std::vector<NameId>& name_stratum(unsigned alpha);

    // Largest alpha whose stratum fits the cap (at least 0).
    unsigned max_alpha() const;

    const EnrichmentClass* enrichment(const std::string& pred) const;

    ParseContext parse_context(bool with_generic_pred = false);
    PrintContext print_context() const;

private:
    std::deque<std::vector<NameId>> m_strata;
};

// Workspace file: INI-style sections [universe] (bounds), [algebra]
// (atoms = p q), [enrich] (Pred = { ... } extensions), [names]
// (alias = term), [tilde] (alias = tilde LEVEL { idx -> "formula", ... }).
std::unique_ptr<Workspace> parse_workspace(const std::string& text, const std::string& origin);
std::unique_ptr<Workspace> load_workspace(const std::string& path);

} // namespace bvm
