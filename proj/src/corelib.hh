/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef DX_GUARD_SRC_CORELIB_HH
#define DX_GUARD_SRC_CORELIB_HH 1

#include "model.hh"

#include <map>
#include <vector>

namespace dx
{
    // Connected components of the atoms' Gaifman graph (atoms are adjacent when
    // they share a null). Blocks are ordered by their least atom.
    struct BlockPartition
    {
        std::vector<Instance> blocks;
        std::map<Atom, std::size_t> block_of;

        auto null_counts() const -> std::vector<std::size_t>;
        auto max_nulls() const -> std::size_t;
    };

    auto atom_blocks(const Instance &) -> BlockPartition;

    auto block_packed(const Instance & block) -> bool;
    auto blocks_packed(const Instance &) -> bool;

    // Blocks algorithm: repeatedly replace J by h(J) for a non-injective
    // endomorphism h that only moves the nulls of one block of the input.
    auto core_of(const Instance &) -> Instance;

    auto core_solution(const SchemaMapping &, const Instance & source) -> Instance;

    auto is_core(const Instance &) -> bool;
}

#endif
