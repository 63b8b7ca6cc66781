/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include "oracle.hh"
#include "chase.hh"
#include "corelib.hh"
#include "gcwa.hh"
#include "match.hh"
#include "minrep.hh"

#include <algorithm>

using namespace dx;

using std::function;
using std::map;
using std::optional;
using std::set;
using std::size_t;
using std::string;
using std::vector;

auto SolutionFamily::contains(const Instance & i) const -> bool
{
    return std::binary_search(members.begin(), members.end(), i);
}

auto CertAccumulator::add(const Instance & i) -> bool
{
    ++_seen;
    if (! _started) {
        _started = true;
        for (auto & t : constant_tuples(query_answers(_q, i)))
            if (std::none_of(t.begin(), t.end(), is_fresh_constant))
                _current.insert(t);
    }
    else {
        for (auto t = _current.begin() ; t != _current.end() ; ) {
            Assignment a;
            for (size_t k = 0 ; k < _q.free_variables.size() ; ++k)
                a[_q.free_variables[k]] = (*t)[k];
            if (eval_fo(*_q.body, i, a))
                ++t;
            else
                t = _current.erase(t);
        }
    }
    return ! _current.empty();
}

auto CertAccumulator::result(EmptyCert empty, const set<Value> & universe) const -> TupleSet
{
    if (_started)
        return _current;
    if (empty == EmptyCert::None)
        return { };
    set<Value> named;
    for (auto & v : universe)
        if (! is_fresh_constant(v))
            named.insert(v);
    return all_tuples(named, _q.free_variables.size());
}

namespace
{
    auto fresh_pool(const Budget & b) -> vector<Value>
    {
        vector<Value> result;
        for (size_t i = 1 ; i <= b.fresh_constants ; ++i)
            result.push_back(fresh_constant(int(i)));
        return result;
    }

    auto named_part(const set<Value> & universe) -> set<Value>
    {
        set<Value> result;
        for (auto & v : universe)
            if (! is_fresh_constant(v))
                result.insert(v);
        return result;
    }

    auto for_each_tuple(size_t width, const vector<Value> & range, const function<void (const vector<Value> &)> & f) -> void
    {
        vector<Value> t(width);
        function<void (size_t)> go = [&] (size_t i) {
            if (i == width) {
                f(t);
                return;
            }
            for (auto & v : range) {
                t[i] = v;
                go(i + 1);
            }
        };
        go(0);
    }

    auto all_target_atoms(const Schema & target, const vector<Value> & universe) -> vector<Atom>
    {
        vector<Atom> result;
        for (auto & [r, arity] : target)
            for_each_tuple(size_t(arity), universe, [&] (const vector<Value> & t) {
                    result.push_back(Atom{ r, t });
                    });
        std::sort(result.begin(), result.end());
        return result;
    }

    // subsets of `pool` of size k, in lexicographic order of indices
    auto for_each_combination(const vector<Atom> & pool, size_t k, const function<bool (const vector<Atom> &)> & f) -> bool
    {
        vector<Atom> chosen;
        function<bool (size_t)> go = [&] (size_t from) -> bool {
            if (chosen.size() == k)
                return f(chosen);
            for (size_t i = from ; i + (k - chosen.size()) <= pool.size() ; ++i) {
                chosen.push_back(pool[i]);
                bool go_on = go(i + 1);
                chosen.pop_back();
                if (! go_on)
                    return false;
            }
            return true;
        };
        return go(0);
    }

    auto minimal_only(const vector<Instance> & found) -> vector<Instance>
    {
        set<Instance> result;
        for (auto & a : found) {
            bool minimal = true;
            for (auto & b : found)
                if (b.size() < a.size() && b.subset_of(a)) {
                    minimal = false;
                    break;
                }
            if (minimal)
                result.insert(a);
        }
        return { result.begin(), result.end() };
    }

    auto fresh_permutations(const Budget & b) -> vector<ValueMap>
    {
        auto pool = fresh_pool(b);
        vector<size_t> idx(pool.size());
        for (size_t i = 0 ; i < idx.size() ; ++i)
            idx[i] = i;
        vector<ValueMap> result;
        do {
            ValueMap m;
            for (size_t i = 0 ; i < idx.size() ; ++i)
                m[pool[i]] = pool[idx[i]];
            result.push_back(std::move(m));
        } while (std::next_permutation(idx.begin(), idx.end()));
        return result;
    }

    // least image under a bijection from the fresh constants used onto
    // fresh_1 .. fresh_k
    auto canonical_fresh(const Instance & i) -> Instance
    {
        vector<Value> used;
        for (auto & c : i.constants())
            if (is_fresh_constant(c))
                used.push_back(c);
        if (used.empty())
            return i;
        vector<size_t> idx(used.size());
        for (size_t k = 0 ; k < idx.size() ; ++k)
            idx[k] = k;
        optional<Instance> best;
        do {
            ValueMap m;
            for (size_t k = 0 ; k < idx.size() ; ++k)
                m[used[k]] = fresh_constant(int(idx[k]) + 1);
            auto c = apply_map(m, i);
            if (! best || c < *best)
                best = std::move(c);
        } while (std::next_permutation(idx.begin(), idx.end()));
        return *best;
    }

    struct RepairSearch
    {
        const SchemaMapping & m;
        const Instance & source;
        vector<Value> universe;
        const Budget & budget;
        vector<Trigger> st_triggers;
        set<Instance> visited;
        vector<Instance> found;
        size_t states = 0;

        // Fresh constants absent from the start instance are interchangeable,
        // so a branch may only bring in the lowest unused ones. Found
        // solutions are closed under the permutations fixing the start.
        vector<Value> pool;
        vector<ValueMap> symmetries;

        auto set_start(const Instance & start) -> void
        {
            pool = fresh_pool(budget);
            set<Value> fixed;
            for (auto & c : start.constants())
                if (is_fresh_constant(c))
                    fixed.insert(c);
            for (auto & p : fresh_permutations(budget))
                if (std::all_of(fixed.begin(), fixed.end(), [&] (const Value & v) { return p.at(v) == v; }))
                    symmetries.push_back(p);
        }

        auto admissible(const Instance & j, const vector<Atom> & option) -> bool
        {
            auto used = j.constants();
            set<Value> added;
            for (auto & a : option)
                for (auto & v : a.args)
                    if (is_fresh_constant(v) && ! used.count(v))
                        added.insert(v);
            if (added.empty())
                return true;
            size_t expected = 0;
            for (auto & f : pool) {
                if (used.count(f))
                    continue;
                if (expected == added.size())
                    return true;
                if (! added.count(f))
                    return false;
                ++expected;
            }
            return expected == added.size();
        }

        auto head_options(const Tgd & t, const map<string, Value> & frontier) -> vector<vector<Atom>>
        {
            vector<vector<Atom>> result;
            for_each_tuple(t.existential.size(), universe, [&] (const vector<Value> & zs) {
                    auto values = frontier;
                    for (size_t i = 0 ; i < zs.size() ; ++i)
                        values[t.existential[i]] = zs[i];
                    result.push_back(instantiate_head(t, values));
                    });
            return result;
        }

        auto frontier_of(const Tgd & t, const map<string, Value> & a) -> map<string, Value>
        {
            map<string, Value> result;
            for (auto & v : t.frontier())
                result[v] = a.at(v);
            return result;
        }

        auto witnessed(const Tgd & t, const Instance & j, const map<string, Value> & frontier) -> bool
        {
            bool hit = false;
            for_each_match(t.head, j, frontier, [&] (const map<string, Value> &) {
                    hit = true;
                    return false;
                    });
            return hit;
        }

        // absent: j is a solution; empty: no repair possible
        auto violation(const Instance & j) -> optional<vector<vector<Atom>>>
        {
            for (auto & trig : st_triggers) {
                auto & t = m.st_tgds[trig.tgd];
                auto frontier = frontier_of(t, trig.values);
                if (! witnessed(t, j, frontier))
                    return head_options(t, frontier);
            }

            for (auto & t : m.target_tgds) {
                optional<vector<vector<Atom>>> result;
                for_each_match(t.body, j, { }, [&] (const map<string, Value> & a) {
                        auto frontier = frontier_of(t, a);
                        if (witnessed(t, j, frontier))
                            return true;
                        result = head_options(t, frontier);
                        return false;
                        });
                if (result)
                    return result;
            }

            for (auto & e : m.egds) {
                bool broken = false;
                for_each_match(e.body, j, { }, [&] (const map<string, Value> & a) {
                        auto value = [&] (const Term & x) { return x.is_var ? a.at(x.name) : Value::constant(x.name); };
                        broken = value(e.lhs) != value(e.rhs);
                        return ! broken;
                        });
                if (broken)
                    return vector<vector<Atom>>{ };
            }

            if (! m.constraints.empty()) {
                auto both = source.unite(j);
                for (auto & c : m.constraints)
                    if (! eval_fo(*c, both)) {
                        auto relations = formula_relations(*c);
                        Schema relevant;
                        for (auto & [r, arity] : m.target)
                            if (relations.count(r))
                                relevant[r] = arity;
                        if (relevant.empty())
                            relevant = m.target;
                        vector<vector<Atom>> result;
                        for (auto & a : all_target_atoms(relevant, universe))
                            if (! j.contains(a))
                                result.push_back({ a });
                        return result;
                    }
            }

            return std::nullopt;
        }

        // Smallest states first, so a solution is found before any of its
        // supersets and `found` holds minimal solutions only.
        auto explore(const Instance & start) -> void
        {
            map<size_t, set<Instance>> queue;
            queue[start.size()].insert(start);
            visited.insert(start);
            while (! queue.empty()) {
                auto level = std::move(queue.begin()->second);
                queue.erase(queue.begin());
                for (auto & j : level) {
                    if (++states > budget.state_limit)
                        throw Error(ErrorCode::BudgetExceeded, "repair search exceeded " + std::to_string(budget.state_limit) + " states");
                    if (std::any_of(found.begin(), found.end(), [&] (const Instance & f) { return f.subset_of(j); }))
                        continue;

                    auto v = violation(j);
                    if (! v) {
                        set<Instance> images;
                        for (auto & p : symmetries)
                            images.insert(apply_map(p, j));
                        found.insert(found.end(), images.begin(), images.end());
                        continue;
                    }
                    for (auto & option : *v) {
                        if (! admissible(j, option))
                            continue;
                        auto next = j.unite(Instance(option));
                        if (next.size() > budget.max_atoms || next == j)
                            continue;
                        if (visited.insert(next).second)
                            queue[next.size()].insert(std::move(next));
                    }
                }
            }
        }
    };

    auto minimal_via_core(const SchemaMapping & m, const Instance & source, const Budget & b, const set<Value> & named,
            bool & truncated) -> vector<Instance>
    {
        auto core = core_solution(m, source);
        auto reps = enum_min_C(core, named, b.null_cap).representatives;
        auto pool = fresh_pool(b);

        set<Instance> result;
        for (auto & r : reps) {
            auto rn = r.nulls();
            vector<Value> nulls(rn.begin(), rn.end());
            if (nulls.size() > pool.size()) {
                truncated = true;
                continue;
            }
            ValueMap v;
            for (auto & c : r.constants())
                v[c] = c;
            vector<bool> used(pool.size(), false);
            function<void (size_t)> go = [&] (size_t i) {
                if (i == nulls.size()) {
                    auto inst = apply_map(v, r);
                    if (inst.size() <= b.max_atoms)
                        result.insert(inst);
                    return;
                }
                for (size_t k = 0 ; k < pool.size() ; ++k)
                    if (! used[k]) {
                        used[k] = true;
                        v[nulls[i]] = pool[k];
                        go(i + 1);
                        used[k] = false;
                    }
            };
            go(0);
        }
        return { result.begin(), result.end() };
    }
}

auto dx::oracle_universe(const SchemaMapping & m, const Instance & source, const set<Value> & extra, const Budget & b)
    -> set<Value>
{
    auto u = source.constants();
    auto mc = m.constants();
    u.insert(mc.begin(), mc.end());
    u.insert(extra.begin(), extra.end());
    for (auto & f : fresh_pool(b))
        u.insert(f);
    return u;
}

auto dx::minimal_solutions_containing(const SchemaMapping & m, const Instance & source, const Instance & start,
        const set<Value> & universe, const Budget & b) -> vector<Instance>
{
    if (! source.is_ground())
        throw Error(ErrorCode::NotGround, "source instance contains nulls");
    RepairSearch search{ m, source, { universe.begin(), universe.end() }, b, triggers(m, source), { }, { }, 0, { }, { } };
    search.set_start(start);
    if (start.size() <= b.max_atoms)
        search.explore(start);
    return minimal_only(search.found);
}

auto dx::minimal_ground_solutions(const SchemaMapping & m, const Instance & source, const Budget & b,
        const set<Value> & extra, bool force_general) -> SolutionFamily
{
    SolutionFamily family;
    family.role = FamilyRole::Minimal;
    family.budget = b;
    family.universe = oracle_universe(m, source, extra, b);
    if (m.only_st_tgds() && ! force_general)
        family.members = minimal_via_core(m, source, b, named_part(family.universe), family.truncated);
    else
        family.members = minimal_solutions_containing(m, source, Instance{ }, family.universe, b);
    return family;
}

auto dx::for_each_union(const vector<Instance> & members, const Budget & b, bool up_to_fresh,
        const function<bool (const Instance &)> & f) -> void
{
    auto canon = [&] (const Instance & i) { return up_to_fresh ? canonical_fresh(i) : i; };
    set<Instance> seen;
    vector<Instance> frontier;
    for (auto & m : members) {
        if (m.size() > b.max_atoms)
            continue;
        auto c = canon(m);
        if (seen.insert(c).second) {
            if (! f(c))
                return;
            frontier.push_back(c);
        }
    }
    while (! frontier.empty()) {
        vector<Instance> next;
        for (auto & u : frontier)
            for (auto & m : members) {
                auto w = u.unite(m);
                if (w.size() > b.max_atoms || w.size() == u.size())
                    continue;
                auto c = canon(w);
                if (! seen.insert(c).second)
                    continue;
                if (! f(c))
                    return;
                next.push_back(std::move(c));
                if (seen.size() > b.state_limit)
                    throw Error(ErrorCode::BudgetExceeded, "more than " + std::to_string(b.state_limit) + " unions");
            }
        frontier = std::move(next);
    }
}

auto dx::tstar_levels(const SchemaMapping & m, const Instance & source, const Budget & b, const set<Value> & extra)
    -> TStarLevels
{
    TStarLevels result;
    auto t0 = minimal_ground_solutions(m, source, b, extra);
    result.universe = t0.universe;
    result.levels.push_back(t0.members);
    auto perms = fresh_permutations(b);

    for (size_t round = 0 ; round < b.max_fixpoint_rounds ; ++round) {
        auto & current = result.levels.back();
        set<Instance> unions;
        for_each_union(current, b, true, [&] (const Instance & u) {
                unions.insert(u);
                return true;
                });

        set<Instance> added;
        for (auto & t0u : unions) {
            if (is_solution(m, source, t0u))
                continue;
            for (auto & t : minimal_solutions_containing(m, source, t0u, result.universe, b))
                if (! unions.count(canonical_fresh(t)))
                    for (auto & p : perms)
                        added.insert(apply_map(p, t));
        }

        if (added.empty()) {
            result.fixpoint_reached = true;
            break;
        }
        set<Instance> next(current.begin(), current.end());
        next.insert(added.begin(), added.end());
        result.levels.emplace_back(next.begin(), next.end());
    }
    return result;
}

auto dx::tstar_fixpoint(const SchemaMapping & m, const Instance & source, const Budget & b, const set<Value> & extra)
    -> SolutionFamily
{
    auto levels = tstar_levels(m, source, b, extra);
    SolutionFamily family;
    family.role = FamilyRole::TStar;
    family.members = levels.levels.back();
    family.universe = levels.universe;
    family.budget = b;
    family.fixpoint_reached = levels.fixpoint_reached;
    return family;
}

auto dx::gcwa_star_solutions(const SchemaMapping & m, const Instance & source, const Budget & b, const set<Value> & extra)
    -> SolutionFamily
{
    SolutionFamily family;
    family.role = FamilyRole::GcwaStar;
    family.budget = b;
    vector<Instance> base;
    if (m.only_st_tgds()) {
        auto t0 = minimal_ground_solutions(m, source, b, extra);
        base = t0.members;
        family.universe = t0.universe;
        family.truncated = t0.truncated;
    }
    else {
        auto levels = tstar_levels(m, source, b, extra);
        base = levels.levels.back();
        family.universe = levels.universe;
        family.fixpoint_reached = levels.fixpoint_reached;
    }
    set<Instance> members;
    for_each_union(base, b, false, [&] (const Instance & u) {
            if (is_solution(m, source, u))
                members.insert(u);
            return true;
            });
    family.members.assign(members.begin(), members.end());
    return family;
}

auto dx::is_gcwa_star_solution(const SchemaMapping & m, const Instance & source, const Instance & t, const Budget &) -> bool
{
    if (! m.st_tgds_and_egds())
        throw Error(ErrorCode::UnsupportedSemantics, "membership test needs a mapping of st-tgds and egds");
    if (! t.is_ground())
        return false;
    if (t.size() > 20)
        throw Error(ErrorCode::BudgetExceeded, "instance too large for subset enumeration");
    if (! is_solution(m, source, t))
        return false;

    // a solution inside T that is minimal among subsets of T is minimal outright
    auto & atoms = t.atoms();
    vector<Instance> inside;
    for (unsigned long mask = 0 ; mask < (1UL << atoms.size()) ; ++mask) {
        vector<Atom> part;
        for (size_t i = 0 ; i < atoms.size() ; ++i)
            if (mask & (1UL << i))
                part.push_back(atoms[i]);
        Instance candidate(std::move(part));
        if (is_solution(m, source, candidate))
            inside.push_back(std::move(candidate));
    }
    Instance covered;
    for (auto & mnl : minimal_only(inside))
        covered = covered.unite(mnl);
    return covered == t;
}

auto dx::semantics_name(Semantics s) -> string
{
    switch (s) {
        case Semantics::Owa:      return "owa";
        case Semantics::Cwa:      return "cwa";
        case Semantics::Rcwa:     return "rcwa";
        case Semantics::Gcwa:     return "gcwa";
        case Semantics::Egcwa:    return "egcwa";
        case Semantics::Pws:      return "pws";
        case Semantics::GcwaStar: return "gcwa-star";
    }
    return "?";
}

auto dx::parse_semantics(const string & s) -> Semantics
{
    for (auto x : { Semantics::Owa, Semantics::Cwa, Semantics::Rcwa, Semantics::Gcwa, Semantics::Egcwa,
            Semantics::Pws, Semantics::GcwaStar })
        if (semantics_name(x) == s)
            return x;
    throw Error(ErrorCode::Usage, "unknown semantics '" + s + "'");
}

auto dx::answers_semantics(const SchemaMapping & m, const Instance & source, const FOQuery & q, Semantics sem,
        const OracleOptions & options) -> SemanticsAnswer
{
    auto & b = options.budget;
    SemanticsAnswer out;
    out.budget = b;
    out.path = "oracle";
    auto universe = oracle_universe(m, source, q.constants(), b);
    CertAccumulator cert(q);

    auto minimal = [&] () {
        auto family = minimal_ground_solutions(m, source, b, q.constants(), options.force_general);
        if (family.truncated)
            out.diagnostics.push_back("some minimal solutions need more fresh constants than the budget allows");
        return family.members;
    };
    auto finish = [&] () {
        out.family_size = cert.seen();
        out.answers = cert.result(options.empty_cert, universe);
        return out;
    };

    switch (sem) {
        case Semantics::Owa: {
            if (m.only_st_tgds() && q.is_ucq()) {
                out.path = "owa-homclosed";
                out.answers = answers_owa_homclosed(canonical_solution(m, source), q);
                return out;
            }
            auto pool = all_target_atoms(m.target, { universe.begin(), universe.end() });
            set<Instance> seen;
            size_t states = 0;
            bool go_on = true;
            for (auto & base : minimal()) {
                vector<Atom> extra;
                for (auto & a : pool)
                    if (! base.contains(a))
                        extra.push_back(a);
                for (size_t k = 0 ; go_on && base.size() + k <= b.max_atoms ; ++k)
                    go_on = for_each_combination(extra, k, [&] (const vector<Atom> & add) {
                            if (++states > b.state_limit)
                                throw Error(ErrorCode::BudgetExceeded, "solution enumeration exceeded "
                                        + std::to_string(b.state_limit) + " states");
                            auto t = canonical_fresh(base.unite(Instance(add)));
                            if (! seen.insert(t).second || ! is_solution(m, source, t))
                                return true;
                            return cert.add(t);
                            });
                if (! go_on)
                    break;
            }
            return finish();
        }

        case Semantics::Cwa:
            if (! m.only_st_tgds())
                throw Error(ErrorCode::UnsupportedSemantics, "CWA answers are computed for st-tgd mappings only");
            out.path = "cwa-canonical";
            out.answers = cert_poss(q, canonical_solution(m, source), b.null_cap);
            out.family_size = 1;
            return out;

        case Semantics::Rcwa: {
            auto members = minimal();
            if (members.size() == 1)
                cert.add(members.front());
            else
                out.diagnostics.push_back("no RCWA-solution: " + std::to_string(members.size())
                        + " minimal ground solutions within budget");
            return finish();
        }

        case Semantics::Gcwa: {
            Instance all;
            for (auto & mnl : minimal())
                all = all.unite(mnl);
            auto & atoms = all.atoms();
            bool go_on = true;
            set<Instance> seen;
            for (size_t k = 0 ; go_on && k <= std::min(b.max_atoms, atoms.size()) ; ++k)
                go_on = for_each_combination(atoms, k, [&] (const vector<Atom> & part) {
                        auto t = canonical_fresh(Instance(part));
                        if (! seen.insert(t).second || ! is_solution(m, source, t))
                            return true;
                        return cert.add(t);
                        });
            return finish();
        }

        case Semantics::Egcwa:
            for (auto & mnl : minimal())
                if (! cert.add(mnl))
                    break;
            return finish();

        case Semantics::Pws: {
            if (! m.only_st_tgds())
                throw Error(ErrorCode::UnsupportedSemantics, "PWS is defined for st-tgd mappings only");
            vector<Value> u(universe.begin(), universe.end());
            set<Instance> instantiations;
            for (auto & trig : triggers(m, source)) {
                auto & t = m.st_tgds[trig.tgd];
                for_each_tuple(t.existential.size(), u, [&] (const vector<Value> & zs) {
                        auto values = trig.values;
                        for (size_t i = 0 ; i < zs.size() ; ++i)
                            values[t.existential[i]] = zs[i];
                        instantiations.insert(Instance(instantiate_head(t, values)));
                        });
            }
            if (is_solution(m, source, Instance{ }))
                if (! cert.add(Instance{ }))
                    return finish();
            for_each_union({ instantiations.begin(), instantiations.end() }, b, true, [&] (const Instance & t) {
                    if (! is_solution(m, source, t))
                        return true;
                    return cert.add(t);
                    });
            return finish();
        }

        case Semantics::GcwaStar: {
            vector<Instance> base;
            if (m.only_st_tgds() && ! options.force_general)
                base = minimal();
            else {
                auto levels = tstar_levels(m, source, b, q.constants());
                base = levels.levels.back();
                out.fixpoint_reached = levels.fixpoint_reached;
                if (! levels.fixpoint_reached)
                    out.diagnostics.push_back("FixpointNotReached: T* still growing after "
                            + std::to_string(b.max_fixpoint_rounds) + " rounds");
            }
            bool check = ! m.only_st_tgds();
            for_each_union(base, b, true, [&] (const Instance & t) {
                    if (check && ! is_solution(m, source, t))
                        return true;
                    return cert.add(t);
                    });
            return finish();
        }
    }
    return out;
}
