/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include "logic.hh"

#include <algorithm>
#include <functional>

using namespace dx;

using std::function;
using std::make_shared;
using std::map;
using std::set;
using std::shared_ptr;
using std::size_t;
using std::string;
using std::to_string;
using std::vector;

namespace
{
    auto make(FormulaKind k) -> shared_ptr<Formula>
    {
        auto f = make_shared<Formula>();
        f->kind = k;
        return f;
    }
}

auto Formula::truth(bool b) -> FormulaPtr
{
    return make(b ? FormulaKind::True : FormulaKind::False);
}

auto Formula::make_atom(PatternAtom a) -> FormulaPtr
{
    auto f = make(FormulaKind::Atom);
    f->atom = std::move(a);
    return f;
}

auto Formula::equal(Term a, Term b) -> FormulaPtr
{
    auto f = make(FormulaKind::Equal);
    f->lhs = std::move(a);
    f->rhs = std::move(b);
    return f;
}

auto Formula::negate(FormulaPtr c) -> FormulaPtr
{
    auto f = make(FormulaKind::Not);
    f->children.push_back(std::move(c));
    return f;
}

auto Formula::conjunction(vector<FormulaPtr> cs) -> FormulaPtr
{
    if (cs.size() == 1)
        return cs[0];
    auto f = make(FormulaKind::And);
    f->children = std::move(cs);
    return f;
}

auto Formula::disjunction(vector<FormulaPtr> cs) -> FormulaPtr
{
    if (cs.size() == 1)
        return cs[0];
    auto f = make(FormulaKind::Or);
    f->children = std::move(cs);
    return f;
}

auto Formula::implies(FormulaPtr a, FormulaPtr b) -> FormulaPtr
{
    auto f = make(FormulaKind::Implies);
    f->children = { std::move(a), std::move(b) };
    return f;
}

auto Formula::exists(vector<string> vs, FormulaPtr c) -> FormulaPtr
{
    if (vs.empty())
        return c;
    auto f = make(FormulaKind::Exists);
    f->variables = std::move(vs);
    f->children.push_back(std::move(c));
    return f;
}

auto Formula::forall(vector<string> vs, FormulaPtr c) -> FormulaPtr
{
    if (vs.empty())
        return c;
    auto f = make(FormulaKind::Forall);
    f->variables = std::move(vs);
    f->children.push_back(std::move(c));
    return f;
}

auto Formula::count_exists(string v, int lo, int hi, FormulaPtr c) -> FormulaPtr
{
    auto f = make(FormulaKind::CountExists);
    f->variables = { std::move(v) };
    f->lo = lo;
    f->hi = hi;
    f->children.push_back(std::move(c));
    return f;
}

auto dx::formulas_equal(const Formula & a, const Formula & b) -> bool
{
    if (a.kind != b.kind || a.variables != b.variables || a.children.size() != b.children.size())
        return false;
    switch (a.kind) {
        case FormulaKind::Atom:
            if (! (a.atom == b.atom))
                return false;
            break;
        case FormulaKind::Equal:
            if (! (a.lhs == b.lhs && a.rhs == b.rhs))
                return false;
            break;
        case FormulaKind::CountExists:
            if (a.lo != b.lo || a.hi != b.hi)
                return false;
            break;
        default:
            break;
    }
    for (size_t i = 0 ; i < a.children.size() ; ++i)
        if (! formulas_equal(*a.children[i], *b.children[i]))
            return false;
    return true;
}

auto dx::formula_constants(const Formula & f) -> set<Value>
{
    set<Value> result;
    function<void (const Formula &)> walk = [&] (const Formula & g) {
        if (g.kind == FormulaKind::Atom)
            for (auto & t : g.atom.args)
                if (! t.is_var)
                    result.insert(Value::constant(t.name));
        if (g.kind == FormulaKind::Equal)
            for (auto * t : { &g.lhs, &g.rhs })
                if (! t->is_var)
                    result.insert(Value::constant(t->name));
        for (auto & c : g.children)
            walk(*c);
    };
    walk(f);
    return result;
}

auto dx::formula_free_variables(const Formula & f) -> set<string>
{
    set<string> result;
    function<void (const Formula &, set<string>)> walk = [&] (const Formula & g, set<string> bound) {
        auto see = [&] (const Term & t) {
            if (t.is_var && ! bound.count(t.name))
                result.insert(t.name);
        };
        if (g.kind == FormulaKind::Atom)
            for (auto & t : g.atom.args)
                see(t);
        if (g.kind == FormulaKind::Equal) {
            see(g.lhs);
            see(g.rhs);
        }
        for (auto & v : g.variables)
            bound.insert(v);
        for (auto & c : g.children)
            walk(*c, bound);
    };
    walk(f, { });
    return result;
}

auto dx::formula_relations(const Formula & f) -> set<string>
{
    set<string> result;
    function<void (const Formula &)> walk = [&] (const Formula & g) {
        if (g.kind == FormulaKind::Atom)
            result.insert(g.atom.relation);
        for (auto & c : g.children)
            walk(*c);
    };
    walk(f);
    return result;
}

auto dx::nnf(const FormulaPtr & f, bool negated) -> FormulaPtr
{
    auto map_children = [&] (bool neg) {
        vector<FormulaPtr> cs;
        for (auto & c : f->children)
            cs.push_back(nnf(c, neg));
        return cs;
    };

    switch (f->kind) {
        case FormulaKind::True:
        case FormulaKind::False:
            return Formula::truth((f->kind == FormulaKind::True) != negated);
        case FormulaKind::Atom:
        case FormulaKind::Equal:
            return negated ? Formula::negate(f) : f;
        case FormulaKind::Not:
            return nnf(f->children[0], ! negated);
        case FormulaKind::And:
            return negated ? Formula::disjunction(map_children(true)) : Formula::conjunction(map_children(false));
        case FormulaKind::Or:
            return negated ? Formula::conjunction(map_children(true)) : Formula::disjunction(map_children(false));
        case FormulaKind::Implies:
            if (negated)
                return Formula::conjunction({ nnf(f->children[0], false), nnf(f->children[1], true) });
            return Formula::disjunction({ nnf(f->children[0], true), nnf(f->children[1], false) });
        case FormulaKind::Exists:
            return negated ? Formula::forall(f->variables, nnf(f->children[0], true))
                : Formula::exists(f->variables, nnf(f->children[0], false));
        case FormulaKind::Forall:
            return negated ? Formula::exists(f->variables, nnf(f->children[0], true))
                : Formula::forall(f->variables, nnf(f->children[0], false));
        case FormulaKind::CountExists: {
            auto c = Formula::count_exists(f->variables[0], f->lo, f->hi, nnf(f->children[0], false));
            return negated ? Formula::negate(c) : c;
        }
    }
    return f;
}

namespace
{
    auto contains_kind(const Formula & f, const set<FormulaKind> & kinds) -> bool
    {
        if (kinds.count(f.kind))
            return true;
        for (auto & c : f.children)
            if (contains_kind(*c, kinds))
                return true;
        return false;
    }
}

auto FOQuery::constants() const -> set<Value>
{
    return formula_constants(*body);
}

auto FOQuery::uses_counting() const -> bool
{
    return contains_kind(*body, { FormulaKind::CountExists });
}

auto FOQuery::is_universal() const -> bool
{
    return ! contains_kind(*nnf(body), { FormulaKind::Exists, FormulaKind::CountExists });
}

auto FOQuery::is_existential() const -> bool
{
    return ! contains_kind(*nnf(body), { FormulaKind::Forall, FormulaKind::CountExists });
}

auto FOQuery::is_ucq() const -> bool
{
    return ! contains_kind(*nnf(body), { FormulaKind::Forall, FormulaKind::CountExists, FormulaKind::Not });
}

auto FOQuery::is_cq_neg() const -> bool
{
    return ! contains_kind(*nnf(body), { FormulaKind::Forall, FormulaKind::CountExists, FormulaKind::Or });
}

auto SchemaMapping::constants() const -> set<Value>
{
    set<Value> result;
    auto see_atoms = [&] (const vector<PatternAtom> & atoms) {
        for (auto & a : atoms)
            for (auto & t : a.args)
                if (! t.is_var)
                    result.insert(Value::constant(t.name));
    };
    for (auto * tgds : { &st_tgds, &target_tgds })
        for (auto & t : *tgds) {
            see_atoms(t.body);
            see_atoms(t.head);
        }
    for (auto & e : egds) {
        see_atoms(e.body);
        for (auto * t : { &e.lhs, &e.rhs })
            if (! t->is_var)
                result.insert(Value::constant(t->name));
    }
    for (auto & c : constraints) {
        auto cs = formula_constants(*c);
        result.insert(cs.begin(), cs.end());
    }
    return result;
}

struct CompiledFormula::Node
{
    FormulaKind kind;
    int relation = -1;
    vector<Slot> args;
    vector<shared_ptr<Node>> children;
    vector<int> bound;
    int lo = 0, hi = -1;
};

namespace
{
    struct Compiler
    {
        const Coding & coding;
        vector<string> & relations;
        map<string, int> phantom;
        int slots;

        auto term(const Term & t, const map<string, int> & scope) -> Slot
        {
            if (t.is_var) {
                auto i = scope.find(t.name);
                if (i == scope.end())
                    throw Error(ErrorCode::UnboundVariable, "unbound variable " + t.name);
                return Slot{ true, i->second };
            }
            int c = coding.code(Value::constant(t.name));
            if (c == -1) {
                auto [i, fresh] = phantom.emplace(t.name, -2 - int(phantom.size()));
                c = i->second;
            }
            return Slot{ false, c };
        }

        auto compile(const Formula & f, map<string, int> scope) -> shared_ptr<CompiledFormula::Node>
        {
            auto n = make_shared<CompiledFormula::Node>();
            n->kind = f.kind;
            n->lo = f.lo;
            n->hi = f.hi;
            if (f.kind == FormulaKind::Atom) {
                auto i = std::find(relations.begin(), relations.end(), f.atom.relation);
                n->relation = int(i - relations.begin());
                if (i == relations.end())
                    relations.push_back(f.atom.relation);
                for (auto & t : f.atom.args)
                    n->args.push_back(term(t, scope));
            }
            if (f.kind == FormulaKind::Equal) {
                n->args.push_back(term(f.lhs, scope));
                n->args.push_back(term(f.rhs, scope));
            }
            for (auto & v : f.variables) {
                n->bound.push_back(slots);
                scope[v] = slots++;
            }
            for (auto & c : f.children)
                n->children.push_back(compile(*c, scope));
            return n;
        }
    };

    struct Evaluator
    {
        const CodedInstance & instance;
        const vector<int> & domain;
        vector<int> & slots;
        vector<int> relation_ids;
        vector<int> buffer;

        auto value(const Slot & s) const -> int
        {
            return s.is_var ? slots[s.index] : s.index;
        }

        auto quantify(const CompiledFormula::Node & n, size_t i, bool existential) -> bool
        {
            if (i == n.bound.size())
                return eval(*n.children[0]);
            for (int d : domain) {
                slots[n.bound[i]] = d;
                bool r = quantify(n, i + 1, existential);
                if (r == existential)
                    return r;
            }
            return ! existential;
        }

        auto eval(const CompiledFormula::Node & n) -> bool
        {
            switch (n.kind) {
                case FormulaKind::True: return true;
                case FormulaKind::False: return false;
                case FormulaKind::Atom: {
                    int rel = relation_ids[n.relation];
                    if (rel < 0)
                        return false;
                    buffer.resize(n.args.size());
                    for (size_t i = 0 ; i < n.args.size() ; ++i) {
                        buffer[i] = value(n.args[i]);
                        if (buffer[i] < 0)
                            return false;
                    }
                    return instance.contains(rel, buffer);
                }
                case FormulaKind::Equal:
                    return value(n.args[0]) == value(n.args[1]);
                case FormulaKind::Not:
                    return ! eval(*n.children[0]);
                case FormulaKind::And:
                    for (auto & c : n.children)
                        if (! eval(*c))
                            return false;
                    return true;
                case FormulaKind::Or:
                    for (auto & c : n.children)
                        if (eval(*c))
                            return true;
                    return false;
                case FormulaKind::Implies:
                    return ! eval(*n.children[0]) || eval(*n.children[1]);
                case FormulaKind::Exists:
                    return quantify(n, 0, true);
                case FormulaKind::Forall:
                    return quantify(n, 0, false);
                case FormulaKind::CountExists: {
                    int count = 0;
                    for (int d : domain) {
                        slots[n.bound[0]] = d;
                        if (eval(*n.children[0]))
                            ++count;
                        if (n.hi >= 0 && count > n.hi)
                            return false;
                    }
                    return count >= n.lo;
                }
            }
            return false;
        }
    };
}

CompiledFormula::CompiledFormula(const Formula & f, const vector<string> & free_variables, const Coding & coding) :
    _free(free_variables)
{
    map<string, int> scope;
    for (auto & v : free_variables)
        if (! scope.count(v))
            scope.emplace(v, int(scope.size()));
    Compiler c{ coding, _relations, { }, int(free_variables.size()) };
    _root = c.compile(f, scope);
    _slots = c.slots;
}

auto CompiledFormula::eval(const CodedInstance & instance, const vector<int> & domain, vector<int> & slots) const -> bool
{
    if (int(slots.size()) < _slots)
        slots.resize(_slots, -1);
    Evaluator e{ instance, domain, slots, { }, { } };
    for (auto & r : _relations)
        e.relation_ids.push_back(instance.relation(r));
    return e.eval(*_root);
}

auto dx::eval_fo(const Formula & f, const Instance & instance, const Assignment & alpha) -> bool
{
    auto values = instance.dom();
    auto consts = formula_constants(f);
    values.insert(consts.begin(), consts.end());
    vector<int> domain;
    for (int i = 0 ; i < int(values.size()) ; ++i)
        domain.push_back(i);
    for (auto & [k, v] : alpha)
        values.insert(v);

    Coding coding(values);
    CodedInstance coded(instance, coding);

    vector<string> free;
    for (auto & v : formula_free_variables(f)) {
        if (! alpha.count(v))
            throw Error(ErrorCode::UnboundVariable, "no value for free variable " + v);
        free.push_back(v);
    }
    // domain codes must refer to dom(I) and dom(f) only
    domain.clear();
    set<Value> active = instance.dom();
    active.insert(consts.begin(), consts.end());
    for (auto & v : active)
        domain.push_back(coding.code(v));

    CompiledFormula compiled(f, free, coding);
    vector<int> slots(compiled.slot_count(), -1);
    for (size_t i = 0 ; i < free.size() ; ++i)
        slots[i] = coding.code(alpha.at(free[i]));
    return compiled.eval(coded, domain, slots);
}

auto dx::query_answers(const FOQuery & q, const Instance & instance) -> TupleSet
{
    auto values = instance.dom();
    auto consts = q.constants();
    values.insert(consts.begin(), consts.end());
    Coding coding(values);
    CodedInstance coded(instance, coding);
    vector<int> domain;
    for (int i = 0 ; i < coding.size() ; ++i)
        domain.push_back(i);

    CompiledFormula compiled(*q.body, q.free_variables, coding);
    vector<int> slots(compiled.slot_count(), -1);

    TupleSet result;
    size_t w = q.free_variables.size();
    vector<int> idx(w, 0);
    if (w > 0 && domain.empty())
        return result;
    while (true) {
        for (size_t i = 0 ; i < w ; ++i)
            slots[i] = idx[i];
        if (compiled.eval(coded, domain, slots)) {
            Tuple t;
            for (size_t i = 0 ; i < w ; ++i)
                t.push_back(coding.value(idx[i]));
            result.insert(std::move(t));
        }
        size_t p = w;
        while (p > 0) {
            --p;
            if (++idx[p] < coding.size())
                break;
            idx[p] = 0;
            if (p == 0) {
                p = w + 1;
                break;
            }
        }
        if (w == 0 || p == w + 1)
            break;
    }
    return result;
}

auto dx::constant_tuples(const TupleSet & ts) -> TupleSet
{
    TupleSet result;
    for (auto & t : ts)
        if (std::all_of(t.begin(), t.end(), [] (const Value & v) { return v.is_constant(); }))
            result.insert(t);
    return result;
}

auto dx::all_tuples(const set<Value> & values, size_t width) -> TupleSet
{
    TupleSet result{ Tuple{ } };
    for (size_t i = 0 ; i < width ; ++i) {
        TupleSet next;
        for (auto & t : result)
            for (auto & v : values) {
                auto u = t;
                u.push_back(v);
                next.insert(std::move(u));
            }
        result = std::move(next);
    }
    return result;
}

auto dx::certain_answers(const FOQuery & q, const vector<Instance> & family, EmptyCert empty, const set<Value> & universe) -> TupleSet
{
    if (family.empty())
        return empty == EmptyCert::All ? all_tuples(universe, q.free_variables.size()) : TupleSet{ };

    TupleSet result = constant_tuples(query_answers(q, family[0]));
    for (size_t i = 1 ; i < family.size() && ! result.empty() ; ++i) {
        TupleSet next;
        for (auto & t : result) {
            Assignment alpha;
            for (size_t j = 0 ; j < t.size() ; ++j)
                alpha[q.free_variables[j]] = t[j];
            auto dom = family[i].dom();
            auto consts = q.constants();
            bool in_domain = std::all_of(t.begin(), t.end(), [&] (const Value & v) { return dom.count(v) || consts.count(v); });
            if (in_domain && eval_fo(*q.body, family[i], alpha))
                next.insert(t);
        }
        result = std::move(next);
    }
    return result;
}

auto dx::fresh_constant(int i) -> Value
{
    return Value::constant("@" + to_string(i));
}

auto dx::is_fresh_constant(const Value & v) -> bool
{
    return v.is_constant() && ! v.name().empty() && v.name()[0] == '@';
}

auto dx::cert_poss(const FOQuery & q, const Instance & T, size_t null_cap, size_t extra_fresh) -> TupleSet
{
    auto nulls_set = T.nulls();
    if (nulls_set.size() > null_cap)
        throw Error(ErrorCode::BudgetExceeded, "cert_poss: " + to_string(nulls_set.size()) + " nulls exceed the cap of " + to_string(null_cap));

    vector<Value> nulls(nulls_set.begin(), nulls_set.end());
    auto base = T.constants();
    auto qc = q.constants();
    base.insert(qc.begin(), qc.end());
    vector<Value> base_list(base.begin(), base.end());
    int fresh_budget = int(nulls.size() + extra_fresh);

    bool first = true;
    TupleSet result;
    ValueMap v;

    function<bool (size_t, int)> go = [&] (size_t i, int used) -> bool {
        if (i == nulls.size()) {
            auto image = apply_map(v, T);
            if (first) {
                for (auto & t : constant_tuples(query_answers(q, image)))
                    if (std::none_of(t.begin(), t.end(), is_fresh_constant))
                        result.insert(t);
                first = false;
            }
            else {
                TupleSet next;
                auto dom = image.dom();
                for (auto & t : result) {
                    if (! std::all_of(t.begin(), t.end(), [&] (const Value & x) { return dom.count(x) || qc.count(x); }))
                        continue;
                    Assignment alpha;
                    for (size_t j = 0 ; j < t.size() ; ++j)
                        alpha[q.free_variables[j]] = t[j];
                    if (eval_fo(*q.body, image, alpha))
                        next.insert(t);
                }
                result = std::move(next);
            }
            return ! result.empty();
        }
        for (auto & b : base_list) {
            v[nulls[i]] = b;
            if (! go(i + 1, used))
                return false;
        }
        for (int f = 1 ; f <= std::min(used + 1, fresh_budget) ; ++f) {
            v[nulls[i]] = fresh_constant(f);
            if (! go(i + 1, std::max(used, f)))
                return false;
        }
        return true;
    };
    go(0, 0);
    return result;
}
