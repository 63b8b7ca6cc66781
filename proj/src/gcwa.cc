/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include "gcwa.hh"
#include "chase.hh"
#include "corelib.hh"
#include "match.hh"
#include "minrep.hh"

#include <algorithm>

using namespace dx;

using std::map;
using std::optional;
using std::pair;
using std::set;
using std::size_t;
using std::string;
using std::vector;

auto ExistentialConjunct::s() const -> size_t
{
    size_t result = positive.size() + 2 * disequalities.size();
    for (auto & n : negative)
        result += n.args.size();
    return result;
}

auto ExistentialConjunct::to_formula() const -> FormulaPtr
{
    vector<FormulaPtr> parts;
    for (auto & a : positive)
        parts.push_back(Formula::make_atom(a));
    for (auto & a : negative)
        parts.push_back(Formula::negate(Formula::make_atom(a)));
    for (auto & [l, r] : equalities)
        parts.push_back(Formula::equal(l, r));
    for (auto & [l, r] : disequalities)
        parts.push_back(Formula::negate(Formula::equal(l, r)));
    auto body = Formula::conjunction(std::move(parts));
    return variables.empty() ? body : Formula::exists(variables, body);
}

auto ExistentialConjunct::to_string() const -> string
{
    auto term = [] (const Term & t) { return t.is_var ? t.name : "'" + t.name + "'"; };
    auto atom = [&] (const PatternAtom & a) {
        string s = a.relation + "(";
        for (size_t i = 0 ; i < a.args.size() ; ++i)
            s += (i ? "," : "") + term(a.args[i]);
        return s + ")";
    };
    vector<string> parts;
    for (auto & a : positive)
        parts.push_back(atom(a));
    for (auto & a : negative)
        parts.push_back("~" + atom(a));
    for (auto & [l, r] : equalities)
        parts.push_back(term(l) + " = " + term(r));
    for (auto & [l, r] : disequalities)
        parts.push_back(term(l) + " != " + term(r));
    string result;
    if (! variables.empty()) {
        result = "exists ";
        for (size_t i = 0 ; i < variables.size() ; ++i)
            result += (i ? "," : "") + variables[i];
        result += ": ";
    }
    if (parts.empty())
        return result + "true";
    for (size_t i = 0 ; i < parts.size() ; ++i)
        result += (i ? " /\\ " : "") + parts[i];
    return result;
}

namespace
{
    using Env = map<string, string>;

    auto rename(const Term & t, const Env & env) -> Term
    {
        if (! t.is_var)
            return t;
        auto i = env.find(t.name);
        return i == env.end() ? t : Term::var(i->second);
    }

    auto rename(const PatternAtom & a, const Env & env) -> PatternAtom
    {
        PatternAtom result{ a.relation, { } };
        for (auto & t : a.args)
            result.args.push_back(rename(t, env));
        return result;
    }

    auto merge(const ExistentialConjunct & a, const ExistentialConjunct & b) -> ExistentialConjunct
    {
        auto r = a;
        auto append = [] (auto & to, const auto & from) { to.insert(to.end(), from.begin(), from.end()); };
        append(r.variables, b.variables);
        append(r.positive, b.positive);
        append(r.negative, b.negative);
        append(r.equalities, b.equalities);
        append(r.disequalities, b.disequalities);
        return r;
    }

    // DNF of an existential NNF formula, with bound variables renamed apart
    auto dnf(const Formula & f, const Env & env, int & counter) -> vector<ExistentialConjunct>
    {
        switch (f.kind) {
            case FormulaKind::True:
                return { ExistentialConjunct{ } };
            case FormulaKind::False:
                return { };
            case FormulaKind::Atom: {
                ExistentialConjunct c;
                c.positive.push_back(rename(f.atom, env));
                return { c };
            }
            case FormulaKind::Equal: {
                ExistentialConjunct c;
                c.equalities.emplace_back(rename(f.lhs, env), rename(f.rhs, env));
                return { c };
            }
            case FormulaKind::Not: {
                auto & g = *f.children[0];
                ExistentialConjunct c;
                if (g.kind == FormulaKind::Atom)
                    c.negative.push_back(rename(g.atom, env));
                else if (g.kind == FormulaKind::Equal)
                    c.disequalities.emplace_back(rename(g.lhs, env), rename(g.rhs, env));
                else
                    throw Error(ErrorCode::NotUniversal, "negation of a compound formula after normalisation");
                return { c };
            }
            case FormulaKind::And: {
                vector<ExistentialConjunct> acc{ ExistentialConjunct{ } };
                for (auto & child : f.children) {
                    auto part = dnf(*child, env, counter);
                    vector<ExistentialConjunct> next;
                    for (auto & a : acc)
                        for (auto & b : part)
                            next.push_back(merge(a, b));
                    acc = std::move(next);
                }
                return acc;
            }
            case FormulaKind::Or: {
                vector<ExistentialConjunct> acc;
                for (auto & child : f.children)
                    for (auto & c : dnf(*child, env, counter))
                        acc.push_back(std::move(c));
                return acc;
            }
            case FormulaKind::Exists: {
                auto inner = env;
                vector<string> fresh;
                for (auto & v : f.variables) {
                    auto n = v + "#" + std::to_string(++counter);
                    inner[v] = n;
                    fresh.push_back(n);
                }
                auto result = dnf(*f.children[0], inner, counter);
                for (auto & c : result)
                    c.variables.insert(c.variables.begin(), fresh.begin(), fresh.end());
                return result;
            }
            case FormulaKind::Implies:
            case FormulaKind::Forall:
            case FormulaKind::CountExists:
                break;
        }
        throw Error(ErrorCode::NotUniversal, "query is not universal");
    }

    auto contradictory(const ExistentialConjunct & c) -> bool
    {
        for (auto & [l, r] : c.disequalities)
            if (l == r)
                return true;
        for (auto & [l, r] : c.equalities)
            if (! l.is_var && ! r.is_var && l != r)
                return true;
        return false;
    }
}

auto dx::normalize_negation(const FOQuery & q) -> vector<ExistentialConjunct>
{
    if (! q.is_universal())
        throw Error(ErrorCode::NotUniversal, "query " + q.name + " is not universal");

    auto negated = nnf(q.body, true);
    int counter = 0;
    vector<ExistentialConjunct> result;
    for (auto & c : dnf(*negated, { }, counter)) {
        if (contradictory(c))
            continue;
        c.constants = q.constants();
        result.push_back(std::move(c));
    }
    return result;
}

auto dx::specialize(const ExistentialConjunct & d, const vector<string> & free_variables, const Tuple & t,
        const set<Value> & extra_constants) -> optional<ExistentialConjunct>
{
    if (free_variables.size() != t.size())
        throw Error(ErrorCode::ArityMismatch, "tuple width does not match the query's free variables");

    map<string, string> bound;
    for (size_t i = 0 ; i < free_variables.size() ; ++i) {
        if (t[i].is_null())
            throw Error(ErrorCode::NotGround, "answer tuples hold constants only");
        bound[free_variables[i]] = t[i].name();
    }
    auto resolve = [&] (const Term & x) {
        if (x.is_var) {
            auto i = bound.find(x.name);
            if (i != bound.end())
                return Term::constant(i->second);
        }
        return x;
    };

    map<Term, Term> parent;
    std::function<Term (const Term &)> find = [&] (const Term & x) -> Term {
        auto i = parent.find(x);
        if (i == parent.end() || i->second == x)
            return x;
        auto r = find(i->second);
        parent[x] = r;
        return r;
    };
    for (auto & [l, r] : d.equalities) {
        auto a = find(resolve(l)), b = find(resolve(r));
        if (a == b)
            continue;
        if (! a.is_var && ! b.is_var)
            return std::nullopt;
        // constants win as representatives, otherwise the smaller variable
        if (! a.is_var || (b.is_var && a < b))
            parent[b] = a;
        else
            parent[a] = b;
    }
    auto sub = [&] (const Term & x) { return find(resolve(x)); };
    auto sub_atom = [&] (const PatternAtom & a) {
        PatternAtom r{ a.relation, { } };
        for (auto & x : a.args)
            r.args.push_back(sub(x));
        return r;
    };

    ExistentialConjunct result;
    for (auto & v : d.variables) {
        auto x = sub(Term::var(v));
        if (x.is_var && x.name == v)
            result.variables.push_back(v);
    }
    for (auto & a : d.positive)
        result.positive.push_back(sub_atom(a));
    for (auto & a : d.negative)
        result.negative.push_back(sub_atom(a));
    for (auto & [l, r] : d.disequalities) {
        auto a = sub(l), b = sub(r);
        if (a == b)
            return std::nullopt;
        if (! a.is_var && ! b.is_var)
            continue;
        result.disequalities.emplace_back(a, b);
    }
    for (auto & n : result.negative)
        if (std::find(result.positive.begin(), result.positive.end(), n) != result.positive.end())
            return std::nullopt;

    result.constants = d.constants;
    result.constants.insert(extra_constants.begin(), extra_constants.end());
    for (auto & v : t)
        result.constants.insert(v);
    for (auto & a : result.positive)
        for (auto & x : a.args)
            if (! x.is_var)
                result.constants.insert(Value::constant(x.name));
    for (auto & a : result.negative)
        for (auto & x : a.args)
            if (! x.is_var)
                result.constants.insert(Value::constant(x.name));
    for (auto & [l, r] : result.disequalities)
        for (auto & x : { l, r })
            if (! x.is_var)
                result.constants.insert(Value::constant(x.name));
    return result;
}

auto dx::satisfies_conjunct(const ExistentialConjunct & d, const Instance & instance) -> bool
{
    auto values = instance.dom();
    values.insert(d.constants.begin(), d.constants.end());
    Coding coding(values);
    CodedInstance coded(instance, coding);

    PatternCompiler pc;
    for (auto & v : d.variables)
        pc.variable(v);
    auto positive = pc.compile(d.positive, coded, coding);
    auto negative = pc.compile(d.negative, coded, coding);
    auto slot = [&] (const Term & t) {
        return t.is_var ? Slot{ true, pc.variable(t.name) } : Slot{ false, coding.code(Value::constant(t.name)) };
    };
    vector<pair<Slot, Slot>> disequalities;
    for (auto & [l, r] : d.disequalities)
        disequalities.emplace_back(slot(l), slot(r));

    int n = pc.variable_count();
    vector<bool> constrained(n, false);
    for (auto & p : positive)
        for (auto & s : p.args)
            if (s.is_var)
                constrained[s.index] = true;

    vector<int> everything(coding.size());
    for (int i = 0 ; i < coding.size() ; ++i)
        everything[i] = i;
    vector<vector<int>> candidates(n);
    for (int v = 0 ; v < n ; ++v)
        if (! constrained[v]) {
            if (everything.empty())
                return false;
            candidates[v] = everything;
        }

    bool found = false;
    vector<int> initial(n, -1);
    match_patterns(positive, n, coded, initial, [&] (const vector<int> & a) {
            auto value = [&] (const Slot & s) { return s.is_var ? a[s.index] : s.index; };
            for (auto & [l, r] : disequalities)
                if (value(l) == value(r))
                    return true;
            for (auto & p : negative) {
                vector<int> tuple;
                for (auto & s : p.args)
                    tuple.push_back(value(s));
                if (coded.contains(p.relation, tuple))
                    return true;
            }
            found = true;
            return false;
            }, &candidates);
    return found;
}

auto EquivRelation::same(const Value & a, const Value & b) const -> bool
{
    auto c = class_of(a);
    return c && c->count(b);
}

auto EquivRelation::class_of(const Value & v) const -> const set<Value> *
{
    for (auto & c : classes)
        if (c.count(v))
            return &c;
    return nullptr;
}

auto dx::compatible_and_relation(const vector<CandidatePair> & pairs) -> optional<EquivRelation>
{
    map<Value, Value> parent;
    std::function<Value (const Value &)> find = [&] (const Value & v) -> Value {
        auto & p = parent.at(v);
        if (p == v)
            return v;
        auto r = find(p);
        parent[v] = r;
        return r;
    };
    auto unite = [&] (const Value & a, const Value & b) {
        auto x = find(a), y = find(b);
        if (x != y)
            parent[std::max(x, y)] = std::min(x, y);
    };

    for (auto & p : pairs)
        for (auto & x : p.variables)
            parent.emplace(p.alpha.at(x), p.alpha.at(x));

    for (size_t i = 0 ; i < pairs.size() ; ++i)
        for (size_t j = i + 1 ; j < pairs.size() ; ++j)
            for (auto & x : pairs[i].variables)
                if (pairs[j].alpha.count(x))
                    unite(pairs[i].alpha.at(x), pairs[j].alpha.at(x));

    map<Value, set<Value>> by_root;
    for (auto & [v, _] : parent)
        by_root[find(v)].insert(v);

    EquivRelation result;
    for (auto & [_, members] : by_root) {
        if (members.size() > 1)
            for (auto & v : members)
                if (v.is_constant())
                    return std::nullopt;
        result.classes.push_back(members);
    }

    for (auto & p : pairs)
        for (auto & x : p.variables)
            for (auto & y : p.variables) {
                auto & u = p.alpha.at(x), & w = p.alpha.at(y);
                if (u != w && find(u) == find(w))
                    return std::nullopt;
            }

    std::sort(result.classes.begin(), result.classes.end());
    return result;
}

auto dx::join_pairs(const vector<CandidatePair> & pairs, const EquivRelation & rel) -> pair<Instance, Assignment>
{
    map<Value, size_t> position;
    for (auto & p : pairs)
        for (auto & x : p.variables)
            position.emplace(p.alpha.at(x), position.size());

    auto hat = [&] (const Value & u) {
        auto c = rel.class_of(u);
        if (! c)
            return u;
        Value best = u;
        for (auto & w : *c)
            if (position.at(w) < position.at(best))
                best = w;
        return best;
    };

    Instance joined;
    Assignment alpha;
    for (auto & p : pairs) {
        set<Value> image;
        for (auto & x : p.variables)
            image.insert(p.alpha.at(x));
        ValueMap r;
        for (auto & u : p.instance.dom())
            r[u] = image.count(u) ? hat(u) : u;
        joined = joined.unite(apply_map(r, p.instance));
        for (auto & x : p.variables)
            alpha.emplace(x, r.at(p.alpha.at(x)));
    }
    return { joined, alpha };
}

namespace
{
    auto check_fast_path(const Instance & t, size_t bs) -> void
    {
        if (! is_core(t))
            throw Error(ErrorCode::NotCore, "instance is not a core");
        auto partition = atom_blocks(t);
        for (auto & b : partition.blocks)
            if (! block_packed(b))
                throw Error(ErrorCode::NotPacked, "atom block " + b.atoms().front().to_string() + " ... is not packed");
        if (partition.max_nulls() > bs)
            throw Error(ErrorCode::BlockTooLarge, "an atom block has more than " + std::to_string(bs) + " nulls");
    }

    // min_C(T,B) over all blocks depends on C only through dom(T) u C
    struct RepresentativeCache
    {
        const Instance & t;
        size_t bs;
        map<set<Value>, vector<Instance>> cache;

        auto get(const set<Value> & c) -> const vector<Instance> &
        {
            auto key = t.dom();
            key.insert(c.begin(), c.end());
            auto i = cache.find(key);
            if (i == cache.end())
                i = cache.emplace(key, enum_min_C_blocks(t, c, bs)).first;
            return i->second;
        }
    };

    auto variables_in_order(const PatternAtom & a) -> vector<string>
    {
        vector<string> result;
        for (auto & t : a.args)
            if (t.is_var && std::find(result.begin(), result.end(), t.name) == result.end())
                result.push_back(t.name);
        return result;
    }

    auto core_eval_unchecked(const Instance & t, const ExistentialConjunct & d, const vector<Instance> & reps) -> bool
    {
        size_t k = d.positive.size();
        size_t s = std::max<size_t>(d.s(), 1);

        auto nulls = t.nulls();
        auto base = t.max_null_id() + 1;
        auto rho = [&] (size_t i, const Instance & x) {
            ValueMap m;
            size_t j = 0;
            for (auto & n : nulls)
                m[n] = Value::null(base + (i - 1) * nulls.size() + j++);
            for (auto & c : x.constants())
                m[c] = c;
            return apply_map(m, x);
        };

        Instance copies;
        for (size_t i = k + 1 ; i <= s ; ++i)
            copies = copies.unite(rho(i, t));

        if (k == 0)
            return satisfies_conjunct(d, copies);

        vector<vector<CandidatePair>> xs(k);
        for (size_t i = 0 ; i < k ; ++i) {
            auto vars = variables_in_order(d.positive[i]);
            for (auto & r : reps) {
                auto inst = rho(i + 1, r);
                for_each_match({ d.positive[i] }, inst, { }, [&] (const map<string, Value> & a) {
                        xs[i].push_back(CandidatePair{ inst, vars, a });
                        return true;
                        });
            }
            if (xs[i].empty())
                return false;
        }

        set<Instance> tried;
        vector<CandidatePair> chosen;
        std::function<bool (size_t)> go = [&] (size_t i) -> bool {
            if (i == k) {
                auto rel = compatible_and_relation(chosen);
                auto [joined, _] = join_pairs(chosen, *rel);
                if (! tried.insert(joined).second)
                    return false;
                return satisfies_conjunct(d, joined.unite(copies));
            }
            for (auto & p : xs[i]) {
                chosen.push_back(p);
                bool ok = compatible_and_relation(chosen).has_value() && go(i + 1);
                chosen.pop_back();
                if (ok)
                    return true;
            }
            return false;
        };
        return go(0);
    }

    auto tuple_constants(const Tuple & t) -> set<Value>
    {
        return { t.begin(), t.end() };
    }

    auto over_allowed(const Tuple & t, const set<Value> & allowed) -> bool
    {
        for (auto & v : t)
            if (! allowed.count(v))
                return false;
        return true;
    }

    auto eval_with_cache(RepresentativeCache & cache, const FOQuery & q, const vector<ExistentialConjunct> & templates,
            const Tuple & tuple) -> bool
    {
        auto allowed = cache.t.constants();
        auto qc = q.constants();
        allowed.insert(qc.begin(), qc.end());
        if (! over_allowed(tuple, allowed))
            return false;

        auto c = qc;
        c.insert(tuple.begin(), tuple.end());
        for (auto & tpl : templates) {
            auto d = specialize(tpl, q.free_variables, tuple, tuple_constants(tuple));
            if (d && core_eval_unchecked(cache.t, *d, cache.get(c)))
                return false;
        }
        return true;
    }
}

auto dx::core_eval(const Instance & t, const ExistentialConjunct & d, size_t bs) -> bool
{
    check_fast_path(t, bs);
    return core_eval_unchecked(t, d, enum_min_C_blocks(t, d.constants, bs));
}

auto dx::eval_gcwa_star_universal(const Instance & core, const FOQuery & q, const Tuple & tuple, size_t bs) -> bool
{
    auto templates = normalize_negation(q);
    check_fast_path(core, bs);
    RepresentativeCache cache{ core, bs, { } };
    return eval_with_cache(cache, q, templates, tuple);
}

auto dx::answers_gcwa_star_universal(const Instance & core, const FOQuery & q, size_t bs) -> TupleSet
{
    auto templates = normalize_negation(q);
    check_fast_path(core, bs);
    RepresentativeCache cache{ core, bs, { } };

    auto values = core.constants();
    auto qc = q.constants();
    values.insert(qc.begin(), qc.end());
    TupleSet result;
    for (auto & t : all_tuples(values, q.free_variables.size()))
        if (eval_with_cache(cache, q, templates, t))
            result.insert(t);
    return result;
}

auto dx::answers_owa_homclosed(const Instance & universal, const FOQuery & q) -> TupleSet
{
    if (! q.is_ucq())
        throw Error(ErrorCode::NotHomomorphismClosed, "query " + q.name + " is not a union of conjunctive queries");
    return constant_tuples(query_answers(q, universal));
}

namespace
{
    // Unions of at most s minimal instances of poss(T), each an injective
    // valuation of a member of min_C(T). Fresh constants are introduced in
    // first-use order; known constants outside C may also be hit.
    struct UnionSearch
    {
        const ExistentialConjunct & d;
        const vector<Instance> & templates;
        vector<Value> named;
        size_t s;
        map<Instance, size_t> seen;

        auto fresh_in(const Instance & u) -> int
        {
            int n = 0;
            for (auto & c : u.constants())
                if (is_fresh_constant(c))
                    ++n;
            return n;
        }

        // fresh constants renumbered by first occurrence; isomorphic to u
        auto renumbered(const Instance & u) -> Instance
        {
            ValueMap m;
            int next = 0;
            for (auto & a : u)
                for (auto & v : a.args)
                    if (is_fresh_constant(v) && ! m.count(v))
                        m[v] = fresh_constant(++next);
            return apply_map(m, u);
        }

        // Adds no value and no atom a positive literal could use: any union
        // containing it satisfies d only if the union without it does.
        auto useless(const Instance & inst, const Instance & u) -> bool
        {
            auto dom = u.dom();
            for (auto & a : inst) {
                for (auto & v : a.args)
                    if (! dom.count(v))
                        return false;
                if (! u.contains(a))
                    for (auto & p : d.positive)
                        if (p.relation == a.relation)
                            return false;
            }
            return true;
        }

        auto go(const Instance & u, size_t depth) -> bool
        {
            if (depth > 0 && satisfies_conjunct(d, u))
                return true;
            // an empty template makes the empty instance a union of its own
            if (depth == 0 && std::any_of(templates.begin(), templates.end(), [] (auto & t) { return t.empty(); })
                    && satisfies_conjunct(d, u))
                return true;
            if (depth == s)
                return false;

            int used = fresh_in(u);
            for (auto & tpl : templates) {
                auto tnulls = tpl.nulls();
                vector<Value> nulls(tnulls.begin(), tnulls.end());
                auto tconsts = tpl.constants();
                ValueMap m;
                for (auto & c : tconsts)
                    m[c] = c;
                set<Value> taken;
                bool hit = false;

                std::function<void (size_t, int)> assign = [&] (size_t i, int fresh_used) {
                    if (hit)
                        return;
                    if (i == nulls.size()) {
                        auto inst = apply_map(m, tpl);
                        if (inst.subset_of(u) || useless(inst, u))
                            return;
                        auto next = renumbered(u.unite(inst));
                        auto [it, fresh] = seen.emplace(next, depth + 1);
                        if (! fresh) {
                            if (it->second <= depth + 1)
                                return;
                            it->second = depth + 1;
                        }
                        if (go(next, depth + 1))
                            hit = true;
                        return;
                    }
                    auto place = [&] (const Value & v, int f) {
                        if (taken.count(v))
                            return;
                        taken.insert(v);
                        m[nulls[i]] = v;
                        assign(i + 1, f);
                        taken.erase(v);
                    };
                    for (auto & v : named)
                        if (! tconsts.count(v))
                            place(v, fresh_used);
                    for (int f = 1 ; f <= fresh_used ; ++f)
                        place(fresh_constant(f), fresh_used);
                    place(fresh_constant(fresh_used + 1), fresh_used + 1);
                };
                assign(0, used);
                if (hit)
                    return true;
            }
            return false;
        }
    };

    struct GeneralContext
    {
        Instance core;
        FOQuery q;
        vector<ExistentialConjunct> templates;
        size_t null_cap;
        map<set<Value>, vector<Instance>> reps;

        auto eval(const Tuple & tuple) -> bool
        {
            auto allowed = core.constants();
            auto qc = q.constants();
            allowed.insert(qc.begin(), qc.end());
            if (! over_allowed(tuple, allowed))
                return false;

            auto c = qc;
            c.insert(tuple.begin(), tuple.end());
            auto i = reps.find(c);
            if (i == reps.end())
                i = reps.emplace(c, enum_min_C(core, c, null_cap).representatives).first;

            vector<Value> named;
            for (auto & v : core.constants())
                if (! c.count(v))
                    named.push_back(v);

            for (auto & tpl : templates) {
                auto d = specialize(tpl, q.free_variables, tuple, tuple_constants(tuple));
                if (! d)
                    continue;
                UnionSearch search{ *d, i->second, named, std::max<size_t>(d->s(), 1), { } };
                if (search.go(Instance{ }, 0))
                    return false;
            }
            return true;
        }
    };

    auto general_context(const SchemaMapping & m, const Instance & source, const FOQuery & q, size_t null_cap) -> GeneralContext
    {
        if (! m.only_st_tgds())
            throw Error(ErrorCode::UnsupportedSemantics, "the bounded evaluator handles st-tgd mappings only");
        auto templates = normalize_negation(q);
        return GeneralContext{ core_solution(m, source), q, std::move(templates), null_cap, { } };
    }
}

auto dx::eval_gcwa_star_universal_general(const SchemaMapping & m, const Instance & source, const FOQuery & q,
        const Tuple & tuple, size_t null_cap) -> bool
{
    auto ctx = general_context(m, source, q, null_cap);
    return ctx.eval(tuple);
}

auto dx::answers_gcwa_star_universal_general(const SchemaMapping & m, const Instance & source, const FOQuery & q,
        size_t null_cap) -> TupleSet
{
    auto ctx = general_context(m, source, q, null_cap);
    auto values = ctx.core.constants();
    auto qc = q.constants();
    values.insert(qc.begin(), qc.end());
    TupleSet result;
    for (auto & t : all_tuples(values, q.free_variables.size()))
        if (ctx.eval(t))
            result.insert(t);
    return result;
}
