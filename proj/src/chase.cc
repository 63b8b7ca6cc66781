/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include "chase.hh"
#include "logic.hh"
#include "match.hh"

using namespace dx;

using std::map;
using std::size_t;
using std::string;
using std::vector;

auto dx::triggers(const SchemaMapping & m, const Instance & source) -> vector<Trigger>
{
    vector<Trigger> result;
    for (size_t i = 0 ; i < m.st_tgds.size() ; ++i)
        for_each_match(m.st_tgds[i].body, source, { }, [&] (const map<string, Value> & a) {
                result.push_back(Trigger{ i, a });
                return true;
                });
    return result;
}

auto dx::instantiate_head(const Tgd & t, const map<string, Value> & values) -> vector<Atom>
{
    vector<Atom> result;
    for (auto & h : t.head) {
        Atom a{ h.relation, { } };
        for (auto & term : h.args)
            a.args.push_back(term.is_var ? values.at(term.name) : Value::constant(term.name));
        result.push_back(std::move(a));
    }
    return result;
}

auto dx::canonical_solution(const SchemaMapping & m, const Instance & source) -> Instance
{
    if (! source.is_ground())
        throw Error(ErrorCode::NotGround, "source instance contains nulls");

    NullFactory nulls;
    vector<Atom> atoms;
    for (auto & trig : triggers(m, source)) {
        auto & t = m.st_tgds[trig.tgd];
        auto values = trig.values;
        for (auto & z : t.existential)
            values[z] = nulls.fresh();
        for (auto & a : instantiate_head(t, values))
            atoms.push_back(std::move(a));
    }
    return Instance(std::move(atoms));
}

namespace
{
    auto tgd_satisfied(const Tgd & t, const Instance & body_side, const Instance & head_side) -> bool
    {
        bool ok = true;
        for_each_match(t.body, body_side, { }, [&] (const map<string, Value> & a) {
                map<string, Value> frontier;
                for (auto & v : t.frontier())
                    frontier[v] = a.at(v);
                bool witnessed = false;
                for_each_match(t.head, head_side, frontier, [&] (const map<string, Value> &) {
                        witnessed = true;
                        return false;
                        });
                ok = witnessed;
                return ok;
                });
        return ok;
    }

    auto term_value(const Term & t, const map<string, Value> & a) -> Value
    {
        return t.is_var ? a.at(t.name) : Value::constant(t.name);
    }
}

auto dx::is_solution(const SchemaMapping & m, const Instance & source, const Instance & target) -> bool
{
    for (auto & t : m.st_tgds)
        if (! tgd_satisfied(t, source, target))
            return false;
    for (auto & t : m.target_tgds)
        if (! tgd_satisfied(t, target, target))
            return false;
    for (auto & e : m.egds) {
        bool ok = true;
        for_each_match(e.body, target, { }, [&] (const map<string, Value> & a) {
                ok = term_value(e.lhs, a) == term_value(e.rhs, a);
                return ok;
                });
        if (! ok)
            return false;
    }
    if (! m.constraints.empty()) {
        auto both = source.unite(target);
        for (auto & c : m.constraints)
            if (! eval_fo(*c, both))
                return false;
    }
    return true;
}
