/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include "minrep.hh"
#include "corelib.hh"

#include <algorithm>

using namespace dx;

using std::set;
using std::size_t;
using std::vector;

auto MinRepSet::contains(const Instance & i) const -> bool
{
    return std::binary_search(representatives.begin(), representatives.end(), i);
}

auto dx::for_each_assignment(const vector<Value> & nulls, const vector<Value> & range,
        const std::function<bool (const ValueMap &)> & f) -> void
{
    if (range.empty() && ! nulls.empty())
        return;
    vector<size_t> digits(nulls.size(), 0);
    ValueMap m;
    for (auto & n : nulls)
        m[n] = range.front();
    while (true) {
        if (! f(m))
            return;
        size_t i = nulls.size();
        while (true) {
            if (i == 0)
                return;
            --i;
            if (++digits[i] < range.size()) {
                m[nulls[i]] = range[digits[i]];
                break;
            }
            digits[i] = 0;
            m[nulls[i]] = range.front();
        }
    }
}

namespace
{
    auto identity_on_constants(const Instance & t) -> ValueMap
    {
        ValueMap m;
        for (auto & c : t.constants())
            m[c] = c;
        return m;
    }

    // Some legal g has g(T) a proper subset of image.
    auto shrinkable(const Instance & t, const Instance & image) -> bool
    {
        for (auto & a : image) {
            auto smaller = image;
            smaller.erase(a);
            if (find_homomorphism(t, smaller))
                return true;
        }
        return false;
    }

    auto range_of(const Instance & t, const set<Value> & c) -> vector<Value>
    {
        auto r = t.dom();
        r.insert(c.begin(), c.end());
        return { r.begin(), r.end() };
    }
}

auto dx::enum_min_C(const Instance & t, const set<Value> & c, size_t null_cap) -> MinRepSet
{
    auto nulls_set = t.nulls();
    if (nulls_set.size() > null_cap)
        throw Error(ErrorCode::BudgetExceeded, "instance has " + std::to_string(nulls_set.size())
                + " nulls, above the cap of " + std::to_string(null_cap));

    vector<Value> nulls(nulls_set.begin(), nulls_set.end());
    auto range = range_of(t, c);

    set<Instance> images;
    auto fixed = identity_on_constants(t);
    for_each_assignment(nulls, range, [&] (const ValueMap & m) {
            auto f = fixed;
            f.insert(m.begin(), m.end());
            images.insert(apply_map(f, t));
            return true;
            });

    MinRepSet result{ t, c, { }, std::nullopt };
    for (auto & i : images)
        if (! shrinkable(t, i))
            result.representatives.push_back(i);
    return result;
}

auto dx::enum_min_C_block(const Instance & t, const Instance & block, const set<Value> & c, size_t bs) -> MinRepSet
{
    auto block_nulls = block.nulls();
    if (block_nulls.size() > bs)
        throw Error(ErrorCode::BlockTooLarge, "block has " + std::to_string(block_nulls.size())
                + " nulls, above the block size " + std::to_string(bs));

    auto rest = t.minus(block);
    vector<Value> nulls(block_nulls.begin(), block_nulls.end());
    auto range = range_of(t, c);

    set<Instance> images;
    auto fixed = identity_on_constants(t);
    for (auto & n : rest.nulls())
        fixed[n] = n;

    for_each_assignment(nulls, range, [&] (const ValueMap & m) {
            auto f = fixed;
            f.insert(m.begin(), m.end());
            vector<Atom> moved;
            for (auto & a : block) {
                auto b = apply_map(f, a);
                if (! rest.contains(b))
                    for (auto & v : b.args)
                        if (v.is_null() && ! block_nulls.count(v))
                            return true;
                moved.push_back(std::move(b));
            }
            images.insert(rest.unite(Instance(std::move(moved))));
            return true;
            });

    // subset-minimality among the images; smaller images first
    vector<const Instance *> by_size;
    for (auto & i : images)
        by_size.push_back(&i);
    std::stable_sort(by_size.begin(), by_size.end(), [] (auto a, auto b) { return a->size() < b->size(); });

    set<Instance> cores;
    for (size_t i = 0 ; i < by_size.size() ; ++i) {
        bool minimal = true;
        for (size_t j = 0 ; j < i && minimal ; ++j)
            if (by_size[j]->size() < by_size[i]->size() && by_size[j]->subset_of(*by_size[i]))
                minimal = false;
        if (minimal)
            cores.insert(core_of(*by_size[i]));
    }

    return MinRepSet{ t, c, { cores.begin(), cores.end() }, block };
}

auto dx::enum_min_C_blocks(const Instance & t, const set<Value> & c, size_t bs) -> vector<Instance>
{
    set<Instance> all;
    for (auto & b : atom_blocks(t).blocks)
        for (auto & r : enum_min_C_block(t, b, c, bs).representatives)
            all.insert(r);
    return { all.begin(), all.end() };
}

auto dx::atom_in_some_minimal(const Instance & t, const Atom & a) -> bool
{
    if (! a.is_ground())
        throw Error(ErrorCode::NotGround, "atom " + a.to_string() + " contains nulls");
    if (! is_core(t))
        throw Error(ErrorCode::NotCore, "instance is not a core");
    if (! blocks_packed(t))
        throw Error(ErrorCode::NotPacked, "instance has a non-packed atom block");

    set<Value> c(a.args.begin(), a.args.end());
    auto partition = atom_blocks(t);
    for (auto & b : partition.blocks)
        for (auto & r : enum_min_C_block(t, b, c, partition.max_nulls()).representatives)
            if (r.contains(a))
                return true;
    return false;
}
