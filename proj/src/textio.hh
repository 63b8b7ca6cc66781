/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef DX_GUARD_SRC_TEXTIO_HH
#define DX_GUARD_SRC_TEXTIO_HH 1

#include "logic.hh"
#include "model.hh"

#include <json.hpp>

#include <string>

namespace dx
{
    struct SourceText
    {
        std::string text;
        std::string file = "<input>";
    };

    auto read_source(const std::string & path) -> SourceText;

    // Mapping files:
    //   source R/2, P/1.
    //   target E/2.
    //   tgd R(x,y) -> exists z: E(x,z), E(z,y).
    //   egd E(x,y), E(x,y2) -> y = y2.
    //   constraint forall x: P(x) -> exists[2,3] z: E(x,z).
    // Identifiers in tgds and egds are variables; constants are quoted.
    // A tgd whose body uses target relations is a target tgd.
    auto parse_mapping(const SourceText &) -> SchemaMapping;

    // Facts such as R(a,b). E(a,_n1). Tokens starting with an underscore are nulls.
    auto parse_instance(const SourceText &, const Schema &) -> Instance;

    // q(x,y) := forall z: R(x,y) /\ (R(x,z) -> z = y).
    // Identifiers that are neither free nor bound are constants.
    auto parse_query(const SourceText &, const Schema &) -> FOQuery;

    auto format_mapping(const SchemaMapping &) -> std::string;
    auto format_instance(const Instance &) -> std::string;
    auto format_formula(const Formula &) -> std::string;
    auto format_query(const FOQuery &) -> std::string;
    auto format_tuple(const Tuple &) -> std::string;

    auto tuples_to_json(const TupleSet &) -> nlohmann::json;
    auto answers_json(const std::string & query, const std::string & semantics, const TupleSet &,
            const nlohmann::json & meta) -> nlohmann::json;
}

#endif
