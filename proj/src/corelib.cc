/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include "corelib.hh"
#include "chase.hh"

#include <algorithm>
#include <numeric>

using namespace dx;

using std::map;
using std::set;
using std::size_t;
using std::vector;

auto BlockPartition::null_counts() const -> vector<size_t>
{
    vector<size_t> result;
    for (auto & b : blocks)
        result.push_back(b.nulls().size());
    return result;
}

auto BlockPartition::max_nulls() const -> size_t
{
    size_t m = 0;
    for (auto & b : blocks)
        m = std::max(m, b.nulls().size());
    return m;
}

auto dx::atom_blocks(const Instance & instance) -> BlockPartition
{
    auto & atoms = instance.atoms();
    vector<size_t> parent(atoms.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&] (size_t x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };

    map<Value, size_t> first_with;
    for (size_t i = 0 ; i < atoms.size() ; ++i)
        for (auto & v : atoms[i].args)
            if (v.is_null()) {
                auto [it, fresh] = first_with.emplace(v, i);
                if (! fresh) {
                    auto a = find(i), b = find(it->second);
                    if (a != b)
                        parent[std::max(a, b)] = std::min(a, b);
                }
            }

    // roots are least atom indices of their component, so iterating atoms in
    // order meets blocks in order of their least atom
    BlockPartition result;
    map<size_t, size_t> index_of_root;
    vector<vector<Atom>> members;
    for (size_t i = 0 ; i < atoms.size() ; ++i) {
        auto r = find(i);
        auto [it, fresh] = index_of_root.emplace(r, members.size());
        if (fresh)
            members.emplace_back();
        members[it->second].push_back(atoms[i]);
        result.block_of[atoms[i]] = it->second;
    }
    for (auto & m : members)
        result.blocks.emplace_back(std::move(m));
    return result;
}

auto dx::block_packed(const Instance & block) -> bool
{
    auto & atoms = block.atoms();
    for (size_t i = 0 ; i < atoms.size() ; ++i)
        for (size_t j = i + 1 ; j < atoms.size() ; ++j) {
            bool shared = false;
            for (auto & v : atoms[i].args)
                if (v.is_null() && std::find(atoms[j].args.begin(), atoms[j].args.end(), v) != atoms[j].args.end())
                    shared = true;
            if (! shared)
                return false;
        }
    return true;
}

auto dx::blocks_packed(const Instance & instance) -> bool
{
    for (auto & b : atom_blocks(instance).blocks)
        if (! block_packed(b))
            return false;
    return true;
}

namespace
{
    auto shrink_once(Instance & j, const set<Value> & block_nulls) -> bool
    {
        set<Value> live;
        for (auto & n : j.nulls())
            if (block_nulls.count(n))
                live.insert(n);
        if (live.empty())
            return false;

        auto touched = j.restrict_to([&] (const Atom & a) {
                return std::any_of(a.args.begin(), a.args.end(), [&] (const Value & v) { return live.count(v); });
                });

        ValueMap frozen;
        for (auto & n : touched.nulls())
            if (! live.count(n))
                frozen[n] = n;

        for (auto & a : touched) {
            auto target = j;
            target.erase(a);
            if (auto h = find_homomorphism(touched, target, frozen)) {
                for (auto & n : j.nulls())
                    h->emplace(n, n);
                j = apply_map(*h, j);
                return true;
            }
        }
        return false;
    }
}

auto dx::core_of(const Instance & instance) -> Instance
{
    auto partition = atom_blocks(instance);
    vector<set<Value>> block_nulls;
    for (auto & b : partition.blocks)
        block_nulls.push_back(b.nulls());

    Instance j = instance;
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto & nulls : block_nulls)
            if (shrink_once(j, nulls)) {
                changed = true;
                break;
            }
    }
    return j;
}

auto dx::core_solution(const SchemaMapping & m, const Instance & source) -> Instance
{
    return core_of(canonical_solution(m, source));
}

auto dx::is_core(const Instance & instance) -> bool
{
    return core_of(instance).size() == instance.size();
}
