/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include "match.hh"

#include <algorithm>
#include <numeric>

using namespace dx;

using std::function;
using std::set;
using std::size_t;
using std::string;
using std::vector;

Coding::Coding(const set<Value> & values) :
    _values(values.begin(), values.end())
{
    for (int i = 0 ; i < int(_values.size()) ; ++i)
        _index.emplace(_values[i], i);
}

auto Coding::code(const Value & v) const -> int
{
    auto i = _index.find(v);
    return i == _index.end() ? -1 : i->second;
}

auto TupleHash::operator() (const vector<int> & t) const -> size_t
{
    size_t h = 0xcbf29ce484222325ULL;
    for (int x : t)
        h = (h ^ size_t(x + 1)) * 0x100000001b3ULL;
    return h;
}

CodedInstance::CodedInstance(const Instance & instance, const Coding & coding)
{
    for (auto & a : instance) {
        vector<int> t;
        t.reserve(a.args.size());
        for (auto & v : a.args)
            t.push_back(coding.code(v));
        add(add_relation(a.relation), std::move(t));
    }
}

auto CodedInstance::relation(const string & r) const -> int
{
    auto i = _relations.find(r);
    return i == _relations.end() ? -1 : i->second;
}

auto CodedInstance::add_relation(const string & r) -> int
{
    auto [i, fresh] = _relations.emplace(r, int(_tuples.size()));
    if (fresh) {
        _tuples.emplace_back();
        _members.emplace_back();
    }
    return i->second;
}

auto CodedInstance::add(int rel, vector<int> tuple) -> bool
{
    if (! _members[rel].insert(tuple).second)
        return false;
    _tuples[rel].push_back(std::move(tuple));
    return true;
}

auto CodedInstance::tuples(int rel) const -> const vector<vector<int>> &
{
    return _tuples[rel];
}

auto CodedInstance::contains(int rel, const vector<int> & t) const -> bool
{
    return rel >= 0 && rel < int(_members.size()) && _members[rel].count(t);
}

namespace
{
    auto slot_value(const Slot & s, const vector<int> & assignment) -> int
    {
        return s.is_var ? assignment[s.index] : s.index;
    }

    auto consistent(const CodedPattern & p, const vector<int> & tuple, const vector<int> & assignment) -> bool
    {
        for (size_t i = 0 ; i < p.args.size() ; ++i) {
            int v = slot_value(p.args[i], assignment);
            if (v != -1 && v != tuple[i])
                return false;
            if (v == -1)
                for (size_t j = 0 ; j < i ; ++j)
                    if (p.args[j].is_var && p.args[i].is_var && p.args[j].index == p.args[i].index && tuple[j] != tuple[i])
                        return false;
        }
        return true;
    }

    auto partially_matchable(const CodedPattern & p, const CodedInstance & target, const vector<int> & assignment) -> bool
    {
        for (auto & t : target.tuples(p.relation))
            if (consistent(p, t, assignment))
                return true;
        return false;
    }

    struct Search
    {
        const vector<CodedPattern> & patterns;
        const CodedInstance & target;
        const function<bool (const vector<int> &)> & callback;
        vector<int> assignment;
        vector<int> order;
        vector<vector<int>> domains;
        vector<vector<int>> touching;    // per depth: patterns mentioning order[depth]
        vector<int> completed_at;        // per pattern: depth at which it becomes ground

        auto check(int depth) -> bool
        {
            for (int p : touching[depth]) {
                auto & pat = patterns[p];
                if (completed_at[p] == depth) {
                    vector<int> t;
                    t.reserve(pat.args.size());
                    for (auto & s : pat.args)
                        t.push_back(slot_value(s, assignment));
                    if (! target.contains(pat.relation, t))
                        return false;
                }
                else if (! partially_matchable(pat, target, assignment))
                    return false;
            }
            return true;
        }

        auto go(int depth) -> bool
        {
            if (depth == int(order.size()))
                return callback(assignment);
            int v = order[depth];
            for (int c : domains[v]) {
                assignment[v] = c;
                if (check(depth) && ! go(depth + 1)) {
                    assignment[v] = -1;
                    return false;
                }
            }
            assignment[v] = -1;
            return true;
        }
    };
}

auto dx::match_patterns(const vector<CodedPattern> & patterns, int variable_count, const CodedInstance & target,
        const vector<int> & initial, const function<bool (const vector<int> &)> & callback,
        const vector<vector<int>> * candidates) -> void
{
    Search search{ patterns, target, callback, initial, { }, { }, { }, { } };
    search.assignment.resize(variable_count, -1);

    for (auto & p : patterns) {
        if (p.relation == -1)
            return;
        for (auto & s : p.args)
            if (! s.is_var && s.index == -1)
                return;
    }

    vector<int> occurrences(variable_count, 0);
    for (auto & p : patterns)
        for (auto & s : p.args)
            if (s.is_var)
                ++occurrences[s.index];

    for (int v = 0 ; v < variable_count ; ++v)
        if (search.assignment[v] == -1)
            search.order.push_back(v);
    std::stable_sort(search.order.begin(), search.order.end(), [&] (int a, int b) {
            return occurrences[a] > occurrences[b];
            });

    // patterns already ground under the fixed part
    for (auto & p : patterns) {
        bool ground = true;
        for (auto & s : p.args)
            if (s.is_var && search.assignment[s.index] == -1)
                ground = false;
        if (ground) {
            vector<int> t;
            for (auto & s : p.args)
                t.push_back(slot_value(s, search.assignment));
            if (! target.contains(p.relation, t))
                return;
        }
        else if (! partially_matchable(p, target, search.assignment))
            return;
    }

    // per-position candidate filtering
    search.domains.resize(variable_count);
    for (int v : search.order) {
        bool constrained = false;
        set<int> dom;
        for (auto & p : patterns)
            for (size_t i = 0 ; i < p.args.size() ; ++i) {
                if (! p.args[i].is_var || p.args[i].index != v)
                    continue;
                set<int> here;
                for (auto & t : target.tuples(p.relation))
                    if (consistent(p, t, search.assignment))
                        here.insert(t[i]);
                if (! constrained)
                    dom = std::move(here);
                else {
                    set<int> both;
                    std::set_intersection(dom.begin(), dom.end(), here.begin(), here.end(), std::inserter(both, both.end()));
                    dom = std::move(both);
                }
                constrained = true;
            }
        if (candidates && ! (*candidates)[v].empty()) {
            set<int> allowed((*candidates)[v].begin(), (*candidates)[v].end());
            if (! constrained)
                dom = std::move(allowed);
            else {
                set<int> both;
                std::set_intersection(dom.begin(), dom.end(), allowed.begin(), allowed.end(), std::inserter(both, both.end()));
                dom = std::move(both);
            }
            constrained = true;
        }
        if (! constrained)
            throw std::logic_error("match_patterns: unconstrained variable");
        search.domains[v].assign(dom.begin(), dom.end());
    }

    vector<int> depth_of(variable_count, -1);
    for (int d = 0 ; d < int(search.order.size()) ; ++d)
        depth_of[search.order[d]] = d;

    search.touching.resize(search.order.size());
    search.completed_at.assign(patterns.size(), -1);
    for (int p = 0 ; p < int(patterns.size()) ; ++p) {
        set<int> depths;
        for (auto & s : patterns[p].args)
            if (s.is_var && depth_of[s.index] != -1)
                depths.insert(depth_of[s.index]);
        for (int d : depths)
            search.touching[d].push_back(p);
        if (! depths.empty())
            search.completed_at[p] = *depths.rbegin();
    }

    search.go(0);
}

auto PatternCompiler::variable(const string & n) -> int
{
    auto [i, fresh] = _vars.emplace(n, int(_names.size()));
    if (fresh)
        _names.push_back(n);
    return i->second;
}

auto PatternCompiler::lookup(const string & n) const -> int
{
    auto i = _vars.find(n);
    return i == _vars.end() ? -1 : i->second;
}

auto PatternCompiler::compile(const PatternAtom & a, const CodedInstance & target, const Coding & coding) -> CodedPattern
{
    CodedPattern p;
    p.relation = target.relation(a.relation);
    for (auto & t : a.args) {
        if (t.is_var)
            p.args.push_back(Slot{ true, variable(t.name) });
        else
            p.args.push_back(Slot{ false, coding.code(Value::constant(t.name)) });
    }
    return p;
}

auto PatternCompiler::compile(const vector<PatternAtom> & atoms, const CodedInstance & target, const Coding & coding) -> vector<CodedPattern>
{
    vector<CodedPattern> result;
    for (auto & a : atoms)
        result.push_back(compile(a, target, coding));
    return result;
}

auto dx::for_each_match(const vector<PatternAtom> & atoms, const Instance & instance, const std::map<string, Value> & fixed,
        const function<bool (const std::map<string, Value> &)> & callback) -> void
{
    auto values = instance.dom();
    for (auto & [k, v] : fixed)
        values.insert(v);
    Coding coding(values);
    CodedInstance target(instance, coding);

    PatternCompiler pc;
    auto patterns = pc.compile(atoms, target, coding);
    vector<int> initial(pc.variable_count(), -1);
    for (int i = 0 ; i < pc.variable_count() ; ++i) {
        auto f = fixed.find(pc.names()[i]);
        if (f != fixed.end())
            initial[i] = coding.code(f->second);
    }

    vector<vector<int>> found;
    match_patterns(patterns, pc.variable_count(), target, initial, [&] (const vector<int> & a) {
            found.push_back(a);
            return true;
            });
    std::sort(found.begin(), found.end());

    for (auto & a : found) {
        std::map<string, Value> assignment = fixed;
        for (int i = 0 ; i < pc.variable_count() ; ++i)
            assignment[pc.names()[i]] = coding.value(a[i]);
        if (! callback(assignment))
            return;
    }
}
