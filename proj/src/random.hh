/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef DX_GUARD_SRC_RANDOM_HH
#define DX_GUARD_SRC_RANDOM_HH 1

#include "logic.hh"
#include "model.hh"

#include <cstdint>
#include <random>

namespace dx
{
    struct RandomShape
    {
        std::size_t max_source_atoms = 6;
        std::size_t max_head_atoms = 3;
        std::size_t max_literals = 3;
        std::size_t max_core_nulls = 2;      // triples with larger cores are redrawn
    };

    struct RandomTriple
    {
        SchemaMapping mapping;
        Instance source;
        FOQuery query;
    };

    // Source P/1, R/2 and target E/2, F/2 over constants a, b.
    auto random_packed_mapping(std::mt19937 &, const RandomShape & = { }) -> SchemaMapping;
    auto random_source(const SchemaMapping &, std::mt19937 &, std::size_t max_atoms = 6) -> Instance;

    // forall y1 y2: (L1 \/ L2 \/ L3) with literals over x, y1, y2 and a.
    auto random_universal_query(const Schema & target, std::mt19937 &, std::size_t max_literals = 3) -> FOQuery;

    // A union of one or two conjunctive queries with free variable x.
    auto random_ucq(const Schema & target, std::mt19937 &) -> FOQuery;

    auto random_triple(std::mt19937 &, const RandomShape & = { }) -> RandomTriple;

    // DX_SEED if set, else the fallback
    auto seed_from_environment(std::uint32_t fallback = 20260101) -> std::uint32_t;
}

#endif
