/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include "driver.hh"
#include "chase.hh"
#include "corelib.hh"
#include "gcwa.hh"
#include "minrep.hh"
#include "textio.hh"

#include <algorithm>

using namespace dx;

using nlohmann::json;

using std::optional;
using std::set;
using std::size_t;
using std::string;
using std::vector;

auto dx::exit_code_for(ErrorCode c) -> int
{
    switch (c) {
        case ErrorCode::SyntaxError:
        case ErrorCode::ArityMismatch:
        case ErrorCode::SchemaViolation:
        case ErrorCode::UnknownRelation:
        case ErrorCode::UnboundVariable:
        case ErrorCode::Io:
        case ErrorCode::Usage:
            return 1;
        case ErrorCode::BudgetExceeded:
        case ErrorCode::FixpointNotReached:
            return 3;
        default:
            return 2;
    }
}

namespace
{
    auto fast_block_size(const Instance & core) -> size_t
    {
        return std::max<size_t>(atom_blocks(core).max_nulls(), 1);
    }

    auto budget_json(const Budget & b) -> json
    {
        return json{ { "fresh_constants", b.fresh_constants }, { "max_atoms", b.max_atoms },
            { "max_fixpoint_rounds", b.max_fixpoint_rounds }, { "null_cap", b.null_cap } };
    }

    auto atoms_json(const Instance & i) -> json
    {
        json arr = json::array();
        for (auto & a : i)
            arr.push_back(a.to_string());
        return arr;
    }
}

auto dx::fast_path_obstacle(const SchemaMapping & m, const Instance & source, const FOQuery & q) -> optional<string>
{
    if (! m.only_st_tgds())
        return "the mapping has dependencies other than st-tgds";
    if (! q.is_universal())
        return "the query is not universal";
    auto core = core_solution(m, source);
    if (! blocks_packed(core))
        return "Core(M,S) has an atom block that is not packed";
    return std::nullopt;
}

auto dx::evaluate(const SchemaMapping & m, const Instance & source, const FOQuery & q, const EvalRequest & req) -> EvalResult
{
    EvalResult r;
    auto & options = req.oracle_options;
    auto need_oracle = [&] (const string & why) {
        if (! req.oracle && ! req.force_oracle)
            throw Error(ErrorCode::Usage, semantics_name(req.semantics) + ": " + why + "; rerun with --oracle");
    };

    bool direct = false;
    if (req.semantics == Semantics::GcwaStar && ! req.force_oracle) {
        if (q.is_universal() && m.only_st_tgds()) {
            auto core = core_solution(m, source);
            bool packed = blocks_packed(core);
            if (req.general || ! packed) {
                if (! packed)
                    r.diagnostics.push_back("warning: Core(M,S) has an atom block that is not packed;"
                            " using the exhaustive evaluator");
                r.answers = answers_gcwa_star_universal_general(m, source, q, options.budget.null_cap);
                r.path = "general";
            }
            else {
                r.answers = answers_gcwa_star_universal(core, q, fast_block_size(core));
                r.path = "fast";
            }
            direct = true;
        }
        else if (q.is_ucq() && m.only_st_tgds()) {
            r.answers = answers_owa_homclosed(core_solution(m, source), q);
            r.path = "monotone";
            direct = true;
        }
        else
            need_oracle(q.is_universal() ? "the mapping has dependencies other than st-tgds"
                    : "the query is neither universal nor a union of conjunctive queries");
    }
    else if (req.semantics == Semantics::Cwa || (req.semantics == Semantics::Owa && q.is_ucq() && m.only_st_tgds())) {
        // both read a single instance, no enumeration
    }
    else
        need_oracle("only the enumeration oracle implements this semantics here");

    if (! direct) {
        auto a = answers_semantics(m, source, q, req.semantics, options);
        r.answers = std::move(a.answers);
        r.path = a.path;
        r.diagnostics = std::move(a.diagnostics);
        r.meta["family_size"] = a.family_size;
        r.meta["fixpoint_reached"] = a.fixpoint_reached;
        if (a.path == "oracle")
            r.meta["budget"] = budget_json(a.budget);
    }

    r.meta["path"] = r.path;
    r.meta["diagnostics"] = r.diagnostics;
    return r;
}

auto dx::eval_json(const FOQuery & q, const EvalRequest & req, const EvalResult & r) -> json
{
    return answers_json(format_query(q), semantics_name(req.semantics), r.answers, r.meta);
}

auto dx::compare_paths(const SchemaMapping & m, const Instance & source, const FOQuery & q, const Budget & b) -> Comparison
{
    Comparison c;
    if (auto why = fast_path_obstacle(m, source, q))
        c.fast_note = *why;
    else {
        auto core = core_solution(m, source);
        c.fast = answers_gcwa_star_universal(core, q, fast_block_size(core));
    }
    c.general = answers_gcwa_star_universal_general(m, source, q, b.null_cap);
    OracleOptions options;
    options.budget = b;
    c.oracle = answers_semantics(m, source, q, Semantics::GcwaStar, options).answers;
    c.agree = c.general == c.oracle && (! c.fast || *c.fast == c.oracle);
    return c;
}

auto dx::comparison_json(const FOQuery & q, const Comparison & c) -> json
{
    json j;
    j["query"] = format_query(q);
    j["agree"] = c.agree;
    j["fast"] = c.fast ? tuples_to_json(*c.fast) : json(nullptr);
    if (! c.fast)
        j["fast_skipped"] = c.fast_note;
    j["general"] = tuples_to_json(c.general);
    j["oracle"] = tuples_to_json(c.oracle);
    return j;
}

auto dx::blocks_json(const Instance & t) -> json
{
    auto partition = atom_blocks(t);
    json blocks = json::array();
    for (auto & b : partition.blocks)
        blocks.push_back(json{ { "atoms", atoms_json(b) }, { "nulls", b.nulls().size() }, { "packed", block_packed(b) } });
    return json{ { "blocks", blocks }, { "packed", blocks_packed(t) }, { "max_nulls", partition.max_nulls() } };
}

auto dx::minrep_json(const Instance & t, const set<Value> & constants, bool per_block, size_t bs, size_t null_cap) -> json
{
    vector<Instance> reps = per_block ? enum_min_C_blocks(t, constants, bs) : enum_min_C(t, constants, null_cap).representatives;
    json cs = json::array();
    for (auto & c : constants)
        cs.push_back(c.to_string());
    json rs = json::array();
    for (auto & r : reps)
        rs.push_back(atoms_json(r));
    return json{ { "constants", cs }, { "per_block", per_block }, { "representatives", rs } };
}
