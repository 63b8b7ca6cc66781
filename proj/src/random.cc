/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include "random.hh"
#include "corelib.hh"

#include <algorithm>
#include <cstdlib>

using namespace dx;

using std::mt19937;
using std::size_t;
using std::string;
using std::vector;

namespace
{
    auto pick(mt19937 & rng, size_t n) -> size_t
    {
        return std::uniform_int_distribution<size_t>(0, n - 1)(rng);
    }

    auto chance(mt19937 & rng, double p) -> bool
    {
        return std::bernoulli_distribution(p)(rng);
    }

    auto var(const string & v) -> Term { return Term::var(v); }

    auto random_body(mt19937 & rng) -> vector<PatternAtom>
    {
        switch (pick(rng, 5)) {
            case 0:  return { PatternAtom{ "P", { var("x") } } };
            case 1:  return { PatternAtom{ "R", { var("x"), var("y") } } };
            case 2:  return { PatternAtom{ "R", { var("x"), var("x") } } };
            case 3:  return { PatternAtom{ "R", { var("x"), var("y") } }, PatternAtom{ "P", { var("y") } } };
            default: return { PatternAtom{ "R", { var("x"), Term::constant("a") } } };
        }
    }

    auto random_tgd(mt19937 & rng, const RandomShape & shape) -> Tgd
    {
        Tgd t;
        t.body = random_body(rng);
        auto frontier = t.body_variables();

        size_t nz = pick(rng, 3);
        size_t nhead = nz == 0 ? 1 : 1 + pick(rng, shape.max_head_atoms);
        vector<string> zs;
        for (size_t i = 1 ; i <= nz ; ++i)
            zs.push_back("z" + std::to_string(i));

        vector<Term> pool;
        for (auto & v : frontier)
            pool.push_back(var(v));
        for (auto & z : zs)
            pool.push_back(var(z));
        pool.push_back(Term::constant("a"));

        for (size_t i = 0 ; i < nhead ; ++i) {
            PatternAtom a{ chance(rng, 0.5) ? "E" : "F", { pool[pick(rng, pool.size())], pool[pick(rng, pool.size())] } };
            // packed: every head atom mentions z1
            if (nhead > 1 && std::find(a.args.begin(), a.args.end(), var("z1")) == a.args.end())
                a.args[pick(rng, 2)] = var("z1");
            if (std::find(t.head.begin(), t.head.end(), a) == t.head.end())
                t.head.push_back(std::move(a));
        }

        for (auto & z : zs) {
            bool used = false;
            for (auto & a : t.head)
                used = used || std::find(a.args.begin(), a.args.end(), var(z)) != a.args.end();
            if (used)
                t.existential.push_back(z);
        }
        return t;
    }

    struct Literal
    {
        bool negated = false;
        bool equality = false;
        PatternAtom atom;                    // for an equality, relation is empty and args holds both sides

        auto formula() const -> FormulaPtr
        {
            auto f = equality ? Formula::equal(atom.args[0], atom.args[1]) : Formula::make_atom(atom);
            return negated ? Formula::negate(f) : f;
        }
    };

    auto random_literal(mt19937 & rng, const vector<Term> & terms) -> Literal
    {
        auto t = [&] { return terms[pick(rng, terms.size())]; };
        Literal l;
        l.equality = chance(rng, 0.15);
        l.negated = chance(rng, 0.5);
        if (l.equality)
            l.atom = PatternAtom{ "", { t(), t() } };
        else
            l.atom = PatternAtom{ chance(rng, 0.5) ? "E" : "F", { t(), t() } };
        return l;
    }

    auto mentions(const Formula & f, const string & v) -> bool
    {
        return formula_free_variables(f).count(v);
    }
}

auto dx::random_packed_mapping(mt19937 & rng, const RandomShape & shape) -> SchemaMapping
{
    SchemaMapping m;
    m.source = { { "P", 1 }, { "R", 2 } };
    m.target = { { "E", 2 }, { "F", 2 } };
    size_t n = 1 + pick(rng, 2);
    for (size_t i = 0 ; i < n ; ++i)
        m.st_tgds.push_back(random_tgd(rng, shape));
    return m;
}

auto dx::random_source(const SchemaMapping &, mt19937 & rng, size_t max_atoms) -> Instance
{
    vector<Value> consts{ Value::constant("a"), Value::constant("b") };
    vector<Atom> atoms;
    size_t n = 1 + pick(rng, max_atoms);
    for (size_t i = 0 ; i < n ; ++i) {
        if (chance(rng, 0.35))
            atoms.push_back(Atom{ "P", { consts[pick(rng, 2)] } });
        else
            atoms.push_back(Atom{ "R", { consts[pick(rng, 2)], consts[pick(rng, 2)] } });
    }
    return Instance(std::move(atoms));
}

auto dx::random_universal_query(const Schema &, mt19937 & rng, size_t max_literals) -> FOQuery
{
    FOQuery q;
    bool has_x = chance(rng, 0.6);
    if (has_x)
        q.free_variables.push_back("x");

    vector<Term> terms{ var("y1"), var("y2"), Term::constant("a") };
    if (has_x)
        terms.push_back(var("x"));

    vector<Literal> literals;
    size_t n = 1 + pick(rng, max_literals);
    bool x_used = false;
    for (size_t i = 0 ; i < n ; ++i) {
        literals.push_back(random_literal(rng, terms));
        for (auto & a : literals.back().atom.args)
            x_used = x_used || a == var("x");
    }
    if (has_x && ! x_used)
        literals[0].atom.args[0] = var("x");

    vector<FormulaPtr> parts;
    for (auto & l : literals)
        parts.push_back(l.formula());
    auto matrix = Formula::disjunction(std::move(parts));

    vector<string> bound;
    for (auto & y : { "y1", "y2" })
        if (mentions(*matrix, y))
            bound.push_back(y);
    q.body = bound.empty() ? matrix : Formula::forall(bound, matrix);
    return q;
}

auto dx::random_ucq(const Schema &, mt19937 & rng) -> FOQuery
{
    FOQuery q;
    q.free_variables.push_back("x");
    vector<Term> terms{ var("x"), var("y"), Term::constant("a") };

    auto cq = [&] {
        vector<PatternAtom> patterns;
        size_t n = 1 + pick(rng, 2);
        for (size_t i = 0 ; i < n ; ++i)
            patterns.push_back(PatternAtom{ chance(rng, 0.5) ? "E" : "F", { terms[pick(rng, 3)], terms[pick(rng, 3)] } });
        patterns[0].args[pick(rng, 2)] = var("x");
        vector<FormulaPtr> atoms;
        for (auto & p : patterns)
            atoms.push_back(Formula::make_atom(p));
        auto c = Formula::conjunction(std::move(atoms));
        return mentions(*c, "y") ? Formula::exists({ "y" }, c) : c;
    };

    if (chance(rng, 0.3))
        q.body = Formula::disjunction({ cq(), cq() });
    else
        q.body = cq();
    return q;
}

auto dx::random_triple(mt19937 & rng, const RandomShape & shape) -> RandomTriple
{
    while (true) {
        auto m = random_packed_mapping(rng, shape);
        for (int attempt = 0 ; attempt < 4 ; ++attempt) {
            auto s = random_source(m, rng, shape.max_source_atoms);
            if (core_solution(m, s).nulls().size() <= shape.max_core_nulls)
                return RandomTriple{ m, s, random_universal_query(m.target, rng, shape.max_literals) };
        }
    }
}

auto dx::seed_from_environment(std::uint32_t fallback) -> std::uint32_t
{
    if (auto s = std::getenv("DX_SEED"))
        return std::uint32_t(std::strtoul(s, nullptr, 10));
    return fallback;
}
