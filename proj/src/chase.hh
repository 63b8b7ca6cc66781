/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef DX_GUARD_SRC_CHASE_HH
#define DX_GUARD_SRC_CHASE_HH 1

#include "model.hh"

#include <map>
#include <string>
#include <vector>

namespace dx
{
    struct Trigger
    {
        std::size_t tgd;
        std::map<std::string, Value> values;   // universal variables of the body

        auto operator== (const Trigger &) const -> bool = default;
    };

    // Triggers of the st-tgds on S: tgds in file order, body matches in
    // canonical order of their values.
    auto triggers(const SchemaMapping &, const Instance & source) -> std::vector<Trigger>;

    // Head atoms of a tgd under the given values for frontier and existential variables.
    auto instantiate_head(const Tgd &, const std::map<std::string, Value> &) -> std::vector<Atom>;

    // CanSol(M,S): one fresh tuple of nulls per trigger.
    auto canonical_solution(const SchemaMapping &, const Instance & source) -> Instance;

    // S u T satisfies every st-tgd, target tgd, egd and general constraint of M.
    auto is_solution(const SchemaMapping &, const Instance & source, const Instance & target) -> bool;
}

#endif
