/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include "model.hh"
#include "match.hh"

#include <algorithm>

using namespace dx;

using std::function;
using std::map;
using std::nullopt;
using std::optional;
using std::set;
using std::size_t;
using std::string;
using std::strong_ordering;
using std::to_string;
using std::vector;

auto Value::constant(string name) -> Value
{
    Value v;
    v._kind = ValueKind::Constant;
    v._name = std::move(name);
    return v;
}

auto Value::null(std::uint64_t id) -> Value
{
    Value v;
    v._kind = ValueKind::Null;
    v._id = id;
    return v;
}

auto Value::to_string() const -> string
{
    return is_null() ? "_n" + std::to_string(_id) : _name;
}

auto Value::operator== (const Value & o) const -> bool
{
    if (_kind != o._kind)
        return false;
    return is_null() ? _id == o._id : _name == o._name;
}

auto Value::operator<=> (const Value & o) const -> strong_ordering
{
    if (_kind != o._kind)
        return _kind == ValueKind::Constant ? strong_ordering::less : strong_ordering::greater;
    if (is_null())
        return _id <=> o._id;
    int c = _name.compare(o._name);
    return c < 0 ? strong_ordering::less : c > 0 ? strong_ordering::greater : strong_ordering::equal;
}

auto ValueHash::operator() (const Value & v) const -> size_t
{
    return v.is_null() ? std::hash<std::uint64_t>()(v.id()) * 31 + 1 : std::hash<string>()(v.name());
}

auto Atom::is_ground() const -> bool
{
    return std::all_of(args.begin(), args.end(), [] (const Value & v) { return v.is_constant(); });
}

auto Atom::to_string() const -> string
{
    string result = relation + "(";
    for (size_t i = 0 ; i < args.size() ; ++i) {
        if (i)
            result += ",";
        result += args[i].to_string();
    }
    return result + ")";
}

Instance::Instance(vector<Atom> atoms) :
    _atoms(std::move(atoms))
{
    std::sort(_atoms.begin(), _atoms.end());
    _atoms.erase(std::unique(_atoms.begin(), _atoms.end()), _atoms.end());
}

auto Instance::contains(const Atom & a) const -> bool
{
    return std::binary_search(_atoms.begin(), _atoms.end(), a);
}

auto Instance::insert(Atom a) -> bool
{
    auto i = std::lower_bound(_atoms.begin(), _atoms.end(), a);
    if (i != _atoms.end() && *i == a)
        return false;
    _atoms.insert(i, std::move(a));
    return true;
}

auto Instance::erase(const Atom & a) -> bool
{
    auto i = std::lower_bound(_atoms.begin(), _atoms.end(), a);
    if (i == _atoms.end() || *i != a)
        return false;
    _atoms.erase(i);
    return true;
}

auto Instance::dom() const -> set<Value>
{
    set<Value> result;
    for (auto & a : _atoms)
        result.insert(a.args.begin(), a.args.end());
    return result;
}

auto Instance::constants() const -> set<Value>
{
    set<Value> result;
    for (auto & a : _atoms)
        for (auto & v : a.args)
            if (v.is_constant())
                result.insert(v);
    return result;
}

auto Instance::nulls() const -> set<Value>
{
    set<Value> result;
    for (auto & a : _atoms)
        for (auto & v : a.args)
            if (v.is_null())
                result.insert(v);
    return result;
}

auto Instance::is_ground() const -> bool
{
    return std::all_of(_atoms.begin(), _atoms.end(), [] (const Atom & a) { return a.is_ground(); });
}

auto Instance::max_null_id() const -> std::uint64_t
{
    std::uint64_t m = 0;
    for (auto & a : _atoms)
        for (auto & v : a.args)
            if (v.is_null())
                m = std::max(m, v.id());
    return m;
}

auto Instance::subset_of(const Instance & o) const -> bool
{
    return std::includes(o._atoms.begin(), o._atoms.end(), _atoms.begin(), _atoms.end());
}

auto Instance::unite(const Instance & o) const -> Instance
{
    Instance result;
    std::set_union(_atoms.begin(), _atoms.end(), o._atoms.begin(), o._atoms.end(), std::back_inserter(result._atoms));
    return result;
}

auto Instance::minus(const Instance & o) const -> Instance
{
    Instance result;
    std::set_difference(_atoms.begin(), _atoms.end(), o._atoms.begin(), o._atoms.end(), std::back_inserter(result._atoms));
    return result;
}

auto Instance::restrict_to(const function<bool (const Atom &)> & keep) const -> Instance
{
    Instance result;
    for (auto & a : _atoms)
        if (keep(a))
            result._atoms.push_back(a);
    return result;
}

auto PatternAtom::variables() const -> vector<string>
{
    vector<string> result;
    for (auto & t : args)
        if (t.is_var && std::find(result.begin(), result.end(), t.name) == result.end())
            result.push_back(t.name);
    return result;
}

namespace
{
    auto variables_of(const vector<PatternAtom> & atoms) -> vector<string>
    {
        vector<string> result;
        for (auto & a : atoms)
            for (auto & v : a.variables())
                if (std::find(result.begin(), result.end(), v) == result.end())
                    result.push_back(v);
        return result;
    }
}

auto Tgd::body_variables() const -> vector<string>
{
    return variables_of(body);
}

auto Tgd::frontier() const -> vector<string>
{
    vector<string> result;
    auto hv = variables_of(head);
    for (auto & v : body_variables())
        if (std::find(hv.begin(), hv.end(), v) != hv.end())
            result.push_back(v);
    return result;
}

auto Tgd::is_packed() const -> bool
{
    for (size_t i = 0 ; i < head.size() ; ++i)
        for (size_t j = i + 1 ; j < head.size() ; ++j) {
            auto vi = head[i].variables(), vj = head[j].variables();
            bool shared = false;
            for (auto & z : existential)
                if (std::find(vi.begin(), vi.end(), z) != vi.end() && std::find(vj.begin(), vj.end(), z) != vj.end())
                    shared = true;
            if (! shared)
                return false;
        }
    return true;
}

auto SchemaMapping::only_st_tgds() const -> bool
{
    return target_tgds.empty() && egds.empty() && constraints.empty();
}

auto SchemaMapping::st_tgds_and_egds() const -> bool
{
    return target_tgds.empty() && constraints.empty();
}

auto SchemaMapping::block_size() const -> size_t
{
    size_t bs = 0;
    for (auto & t : st_tgds)
        bs = std::max(bs, t.existential.size());
    return bs;
}

auto SchemaMapping::all_packed() const -> bool
{
    return std::all_of(st_tgds.begin(), st_tgds.end(), [] (const Tgd & t) { return t.is_packed(); });
}

auto dx::is_legal_for(const ValueMap & f, const Instance & instance) -> bool
{
    for (auto & v : instance.dom()) {
        auto i = f.find(v);
        if (v.is_null() && i == f.end())
            return false;
        if (v.is_constant() && i != f.end() && i->second != v)
            return false;
    }
    return true;
}

auto dx::apply_map(const ValueMap & f, const Atom & a) -> Atom
{
    Atom result{ a.relation, { } };
    result.args.reserve(a.args.size());
    for (auto & v : a.args) {
        auto i = f.find(v);
        if (i != f.end())
            result.args.push_back(i->second);
        else if (v.is_constant())
            result.args.push_back(v);
        else
            throw Error(ErrorCode::UndefinedValue, "no image for " + v.to_string());
    }
    return result;
}

auto dx::apply_map(const ValueMap & f, const Instance & instance) -> Instance
{
    vector<Atom> atoms;
    atoms.reserve(instance.size());
    for (auto & a : instance)
        atoms.push_back(apply_map(f, a));
    return Instance(std::move(atoms));
}

auto dx::compose(const ValueMap & outer, const ValueMap & inner) -> ValueMap
{
    ValueMap result;
    for (auto & [k, v] : inner) {
        auto i = outer.find(v);
        result[k] = i == outer.end() ? v : i->second;
    }
    for (auto & [k, v] : outer)
        if (! inner.count(k))
            result[k] = v;
    return result;
}

auto dx::find_homomorphism(const Instance & from, const Instance & to, const ValueMap & frozen) -> optional<ValueMap>
{
    for (auto & [k, v] : frozen)
        if (k.is_constant() && k != v)
            return nullopt;

    auto values = to.dom();
    Coding coding(values);
    CodedInstance target(to, coding);

    vector<Value> nulls;
    map<Value, int> var_of;
    for (auto & n : from.nulls()) {
        var_of.emplace(n, int(nulls.size()));
        nulls.push_back(n);
    }

    vector<CodedPattern> patterns;
    for (auto & a : from) {
        CodedPattern p{ target.relation(a.relation), { } };
        for (auto & v : a.args)
            p.args.push_back(v.is_null() ? Slot{ true, var_of[v] } : Slot{ false, coding.code(v) });
        patterns.push_back(std::move(p));
    }

    vector<int> initial(nulls.size(), -1);
    for (auto & [k, v] : frozen) {
        auto i = var_of.find(k);
        if (i == var_of.end())
            continue;
        int c = coding.code(v);
        if (c == -1)
            return nullopt;
        initial[i->second] = c;
    }

    optional<ValueMap> result;
    match_patterns(patterns, int(nulls.size()), target, initial, [&] (const vector<int> & assignment) {
            ValueMap h = frozen;
            for (auto & c : from.constants())
                h[c] = c;
            for (size_t i = 0 ; i < nulls.size() ; ++i)
                h[nulls[i]] = coding.value(assignment[i]);
            result = std::move(h);
            return false;
            });
    return result;
}

auto dx::atoms_isomorphic(const Atom & a, const Atom & b) -> bool
{
    if (a.relation != b.relation || a.args.size() != b.args.size())
        return false;
    for (size_t i = 0 ; i < a.args.size() ; ++i) {
        if (a.args[i].kind() != b.args[i].kind())
            return false;
        if (a.args[i].is_constant() && a.args[i] != b.args[i])
            return false;
        for (size_t j = 0 ; j < i ; ++j)
            if ((a.args[i] == a.args[j]) != (b.args[i] == b.args[j]))
                return false;
    }
    return true;
}

auto dx::isomorphic(const Instance & a, const Instance & b) -> bool
{
    if (a.size() != b.size() || a.constants() != b.constants() || a.nulls().size() != b.nulls().size())
        return false;

    auto values = b.dom();
    Coding coding(values);
    CodedInstance target(b, coding);

    vector<Value> nulls;
    map<Value, int> var_of;
    for (auto & n : a.nulls()) {
        var_of.emplace(n, int(nulls.size()));
        nulls.push_back(n);
    }

    vector<int> null_codes;
    for (auto & v : b.nulls())
        null_codes.push_back(coding.code(v));

    vector<CodedPattern> patterns;
    for (auto & atom : a) {
        CodedPattern p{ target.relation(atom.relation), { } };
        for (auto & v : atom.args)
            p.args.push_back(v.is_null() ? Slot{ true, var_of[v] } : Slot{ false, coding.code(v) });
        patterns.push_back(std::move(p));
    }

    // candidates restricted to nulls; injectivity plus equal sizes gives a bijection
    vector<vector<int>> candidates(nulls.size(), null_codes);
    if (null_codes.empty() && ! nulls.empty())
        return false;

    bool found = false;
    match_patterns(patterns, int(nulls.size()), target, vector<int>(nulls.size(), -1), [&] (const vector<int> & assignment) {
            set<int> seen(assignment.begin(), assignment.end());
            if (seen.size() == assignment.size())
                found = true;
            return ! found;
            }, &candidates);
    return found;
}
