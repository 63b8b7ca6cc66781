/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef DX_GUARD_SRC_DRIVER_HH
#define DX_GUARD_SRC_DRIVER_HH 1

#include "logic.hh"
#include "model.hh"
#include "oracle.hh"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace dx
{
    // 0 ok, 1 usage or parse error, 2 precondition violated, 3 budget exceeded
    auto exit_code_for(ErrorCode) -> int;

    struct EvalRequest
    {
        Semantics semantics = Semantics::GcwaStar;
        bool oracle = false;            // allow the oracle where no direct evaluator applies
        bool force_oracle = false;      // use the oracle even where one does
        bool general = false;           // gcwa-star: the exhaustive union search instead of core_eval
        OracleOptions oracle_options;
    };

    struct EvalResult
    {
        TupleSet answers;
        std::string path;
        std::vector<std::string> diagnostics;
        nlohmann::json meta;
    };

    // Why core_eval cannot be used here, if it cannot.
    auto fast_path_obstacle(const SchemaMapping &, const Instance & source, const FOQuery &) -> std::optional<std::string>;

    auto evaluate(const SchemaMapping &, const Instance & source, const FOQuery &, const EvalRequest &) -> EvalResult;

    auto eval_json(const FOQuery &, const EvalRequest &, const EvalResult &) -> nlohmann::json;

    struct Comparison
    {
        std::optional<TupleSet> fast;       // absent when the fast path does not apply
        std::string fast_note;
        TupleSet general;
        TupleSet oracle;
        bool agree = false;
    };

    auto compare_paths(const SchemaMapping &, const Instance & source, const FOQuery &, const Budget &) -> Comparison;
    auto comparison_json(const FOQuery &, const Comparison &) -> nlohmann::json;

    auto blocks_json(const Instance &) -> nlohmann::json;

    // per_block: the union over all blocks of min_C(T,B); otherwise min_C(T)
    auto minrep_json(const Instance &, const std::set<Value> & constants, bool per_block, std::size_t bs,
            std::size_t null_cap) -> nlohmann::json;
}

#endif
