/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef DX_GUARD_TESTS_SUPPORT_HH
#define DX_GUARD_TESTS_SUPPORT_HH 1

#include "chase.hh"
#include "corelib.hh"
#include "logic.hh"
#include "model.hh"
#include "textio.hh"

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#ifndef DX_DATA_DIR
#  define DX_DATA_DIR "data"
#endif

namespace dx::test
{
    inline auto data_path(const std::string & name) -> std::string
    {
        return std::string(DX_DATA_DIR) + "/" + name;
    }

    inline auto mapping(const std::string & name) -> SchemaMapping
    {
        return parse_mapping(read_source(data_path(name)));
    }

    inline auto mapping_text(const std::string & text) -> SchemaMapping
    {
        return parse_mapping(SourceText{ text, "<test>" });
    }

    inline auto source(const SchemaMapping & m, const std::string & name) -> Instance
    {
        return parse_instance(read_source(data_path(name)), m.source);
    }

    inline auto query(const SchemaMapping & m, const std::string & name) -> FOQuery
    {
        return parse_query(read_source(data_path(name)), m.target);
    }

    inline auto query_text(const Schema & s, const std::string & text) -> FOQuery
    {
        return parse_query(SourceText{ text, "<test>" }, s);
    }

    // facts such as "E(a,_n1). F(_n1,b)."
    inline auto inst(const std::string & text, const Schema & s) -> Instance
    {
        return parse_instance(SourceText{ text, "<test>" }, s);
    }

    inline auto c(const std::string & n) -> Value { return Value::constant(n); }
    inline auto n(std::uint64_t i) -> Value { return Value::null(i); }

    inline auto tuples(std::initializer_list<std::vector<std::string>> rows) -> TupleSet
    {
        TupleSet result;
        for (auto & r : rows) {
            Tuple t;
            for (auto & v : r)
                t.push_back(Value::constant(v));
            result.insert(t);
        }
        return result;
    }

    // Up to `atoms` facts over the schema with constants drawn from `pool`.
    inline auto random_ground_instance(std::mt19937 & rng, const Schema & s, std::size_t atoms,
            const std::vector<std::string> & pool) -> Instance
    {
        std::vector<std::pair<std::string, int>> rels(s.begin(), s.end());
        Instance result;
        for (std::size_t i = 0 ; i < atoms ; ++i) {
            auto & [r, arity] = rels[rng() % rels.size()];
            Atom a{ r, { } };
            for (int k = 0 ; k < arity ; ++k)
                a.args.push_back(Value::constant(pool[rng() % pool.size()]));
            result.insert(a);
        }
        return result;
    }

    // the core test straight from the definition
    inline auto brute_is_core(const Instance & i) -> bool
    {
        for (auto & a : i) {
            auto smaller = i;
            smaller.erase(a);
            if (find_homomorphism(i, smaller))
                return false;
        }
        return true;
    }

    inline auto test_fresh(std::size_t i) -> Value { return Value::constant("#f" + std::to_string(i)); }

    inline auto is_test_fresh(const Value & v) -> bool
    {
        return v.is_constant() && v.name().starts_with("#f");
    }

    // Renames the #f constants so that the least renaming wins.
    inline auto canonical_fresh_names(const Instance & i) -> Instance
    {
        std::vector<Value> fresh;
        for (auto & v : i.constants())
            if (is_test_fresh(v))
                fresh.push_back(v);
        std::vector<std::size_t> perm(fresh.size());
        for (std::size_t k = 0 ; k < perm.size() ; ++k)
            perm[k] = k;
        std::optional<Instance> best;
        do {
            ValueMap m;
            for (auto & v : i.nulls())
                m[v] = v;
            for (std::size_t k = 0 ; k < fresh.size() ; ++k)
                m[fresh[k]] = test_fresh(perm[k]);
            auto image = apply_map(m, i);
            if (! best || image < *best)
                best = image;
        } while (std::next_permutation(perm.begin(), perm.end()));
        return *best;
    }

    // Subset-minimal members of poss(T): every valuation of the nulls into
    // const(T), the extra constants and one #f constant per null.
    inline auto brute_minimal_worlds(const Instance & t, const std::set<Value> & extra = { }) -> std::set<Instance>
    {
        auto null_set = t.nulls();
        std::vector<Value> nulls(null_set.begin(), null_set.end());
        auto range_set = t.constants();
        range_set.insert(extra.begin(), extra.end());
        std::vector<Value> range(range_set.begin(), range_set.end());
        for (std::size_t k = 0 ; k < nulls.size() ; ++k)
            range.push_back(test_fresh(k));

        std::set<Instance> images;
        std::vector<std::size_t> pick(nulls.size(), 0);
        while (true) {
            ValueMap v;
            for (std::size_t k = 0 ; k < nulls.size() ; ++k)
                v[nulls[k]] = range[pick[k]];
            images.insert(apply_map(v, t));
            std::size_t k = 0;
            while (k < pick.size() && ++pick[k] == range.size())
                pick[k++] = 0;
            if (k == pick.size())
                break;
        }

        std::set<Instance> result;
        for (auto & i : images) {
            bool minimal = true;
            for (auto & j : images)
                if (j.size() < i.size() && j.subset_of(i)) {
                    minimal = false;
                    break;
                }
            if (minimal)
                result.insert(canonical_fresh_names(i));
        }
        return result;
    }

    // A representative with nulls, made ground by sending its nulls to distinct #f constants.
    inline auto ground_injectively(const Instance & i) -> Instance
    {
        ValueMap m;
        std::size_t k = 0;
        for (auto & v : i.nulls())
            m[v] = test_fresh(k++);
        return canonical_fresh_names(apply_map(m, i));
    }

    inline const Schema binary_e = { { "E", 2 } };
    inline const Schema binary_ef = { { "E", 2 }, { "F", 2 } };
}

#endif
