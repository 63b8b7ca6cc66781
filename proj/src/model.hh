/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef DX_GUARD_SRC_MODEL_HH
#define DX_GUARD_SRC_MODEL_HH 1

#include "errors.hh"

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace dx
{
    enum class ValueKind : std::uint8_t
    {
        Constant,
        Null
    };

    // Constants sort before nulls; constants by name, nulls by id.
    class Value
    {
        private:
            ValueKind _kind = ValueKind::Constant;
            std::string _name;
            std::uint64_t _id = 0;

        public:
            Value() = default;

            static auto constant(std::string name) -> Value;
            static auto null(std::uint64_t id) -> Value;

            auto kind() const -> ValueKind { return _kind; }
            auto is_null() const -> bool { return _kind == ValueKind::Null; }
            auto is_constant() const -> bool { return _kind == ValueKind::Constant; }
            auto name() const -> const std::string & { return _name; }
            auto id() const -> std::uint64_t { return _id; }

            // "a" for constants, "_n3" for nulls.
            auto to_string() const -> std::string;

            auto operator== (const Value &) const -> bool;
            auto operator<=> (const Value &) const -> std::strong_ordering;
    };

    struct ValueHash
    {
        auto operator() (const Value &) const -> std::size_t;
    };

    struct Atom
    {
        std::string relation;
        std::vector<Value> args;

        auto is_ground() const -> bool;
        auto to_string() const -> std::string;

        auto operator== (const Atom &) const -> bool = default;
        auto operator<=> (const Atom &) const = default;
    };

    // A finite set of atoms, kept sorted in canonical order.
    class Instance
    {
        private:
            std::vector<Atom> _atoms;

        public:
            Instance() = default;
            explicit Instance(std::vector<Atom> atoms);

            auto atoms() const -> const std::vector<Atom> & { return _atoms; }
            auto size() const -> std::size_t { return _atoms.size(); }
            auto empty() const -> bool { return _atoms.empty(); }
            auto begin() const { return _atoms.begin(); }
            auto end() const { return _atoms.end(); }

            auto contains(const Atom &) const -> bool;
            auto insert(Atom) -> bool;
            auto erase(const Atom &) -> bool;

            auto dom() const -> std::set<Value>;
            auto constants() const -> std::set<Value>;
            auto nulls() const -> std::set<Value>;
            auto is_ground() const -> bool;
            auto max_null_id() const -> std::uint64_t;

            auto subset_of(const Instance &) const -> bool;
            auto unite(const Instance &) const -> Instance;
            auto minus(const Instance &) const -> Instance;
            auto restrict_to(const std::function<bool (const Atom &)> &) const -> Instance;

            auto operator== (const Instance &) const -> bool = default;
            auto operator<=> (const Instance &) const = default;
    };

    using Schema = std::map<std::string, int>;

    struct Term
    {
        bool is_var = true;
        std::string name;

        static auto var(std::string n) -> Term { return Term{ true, std::move(n) }; }
        static auto constant(std::string n) -> Term { return Term{ false, std::move(n) }; }

        auto operator== (const Term &) const -> bool = default;
        auto operator<=> (const Term &) const = default;
    };

    struct PatternAtom
    {
        std::string relation;
        std::vector<Term> args;

        auto variables() const -> std::vector<std::string>;
        auto operator== (const PatternAtom &) const -> bool = default;
    };

    // phi(x,y) -> exists z: psi(x,z). The body is over the source schema for
    // st-tgds and over the target schema for target tgds.
    struct Tgd
    {
        std::vector<PatternAtom> body;
        std::vector<std::string> existential;
        std::vector<PatternAtom> head;

        auto body_variables() const -> std::vector<std::string>;
        auto frontier() const -> std::vector<std::string>;
        auto is_packed() const -> bool;
        auto operator== (const Tgd &) const -> bool = default;
    };

    struct Egd
    {
        std::vector<PatternAtom> body;
        Term lhs, rhs;

        auto operator== (const Egd &) const -> bool = default;
    };

    struct Formula;
    using FormulaPtr = std::shared_ptr<const Formula>;

    struct SchemaMapping
    {
        Schema source, target;
        std::vector<Tgd> st_tgds;
        std::vector<Tgd> target_tgds;
        std::vector<Egd> egds;
        std::vector<FormulaPtr> constraints;

        auto only_st_tgds() const -> bool;
        auto st_tgds_and_egds() const -> bool;
        auto constants() const -> std::set<Value>;
        // max |z| over the st-tgds
        auto block_size() const -> std::size_t;
        auto all_packed() const -> bool;
    };

    // Constants absent from the map are treated as fixed; a null without an
    // image is an error.
    using ValueMap = std::map<Value, Value>;

    auto is_legal_for(const ValueMap &, const Instance &) -> bool;
    auto apply_map(const ValueMap &, const Atom &) -> Atom;
    auto apply_map(const ValueMap &, const Instance &) -> Instance;
    auto compose(const ValueMap & outer, const ValueMap & inner) -> ValueMap;

    auto find_homomorphism(const Instance & from, const Instance & to, const ValueMap & frozen = { })
        -> std::optional<ValueMap>;

    auto atoms_isomorphic(const Atom &, const Atom &) -> bool;

    // Instances equal up to a bijective renaming of nulls.
    auto isomorphic(const Instance &, const Instance &) -> bool;

    // Hands out nulls with increasing ids; one per operation, never global.
    class NullFactory
    {
        private:
            std::uint64_t _next;

        public:
            explicit NullFactory(std::uint64_t first = 1) : _next(first) { }
            auto fresh() -> Value { return Value::null(_next++); }
            auto next_id() const -> std::uint64_t { return _next; }
    };
}

#endif
