/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef DX_GUARD_SRC_MINREP_HH
#define DX_GUARD_SRC_MINREP_HH 1

#include "model.hh"

#include <optional>
#include <set>
#include <vector>

namespace dx
{
    struct MinRepSet
    {
        Instance base;
        std::set<Value> constants;
        std::vector<Instance> representatives;     // sorted, unique
        std::optional<Instance> block;             // absent: whole instance

        auto contains(const Instance &) const -> bool;
    };

    // min_C(T): subset-minimal images f(T) over all legal f with range dom(T) u C.
    auto enum_min_C(const Instance & t, const std::set<Value> & c, std::size_t null_cap = 8) -> MinRepSet;

    // min_C(T,B): f moves only nulls(B), and f(B) \ (T \ B) mentions no other
    // nulls. Minimal images are reduced to their cores.
    auto enum_min_C_block(const Instance & t, const Instance & block, const std::set<Value> & c, std::size_t bs) -> MinRepSet;

    // Every member of min_C(T,B) over all blocks B, in canonical order.
    auto enum_min_C_blocks(const Instance & t, const std::set<Value> & c, std::size_t bs) -> std::vector<Instance>;

    // Whether the ground atom occurs in some minimal instance of poss(T).
    // T must be a core with packed blocks.
    auto atom_in_some_minimal(const Instance & t, const Atom & a) -> bool;

    // Calls f with every map from the given nulls into the range, in
    // lexicographic order of the range; stops when f returns false.
    auto for_each_assignment(const std::vector<Value> & nulls, const std::vector<Value> & range,
            const std::function<bool (const ValueMap &)> & f) -> void;
}

#endif
