/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef DX_GUARD_SRC_LOGIC_HH
#define DX_GUARD_SRC_LOGIC_HH 1

#include "model.hh"
#include "match.hh"

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace dx
{
    enum class FormulaKind
    {
        True,
        False,
        Atom,
        Equal,
        Not,
        And,
        Or,
        Implies,
        Exists,
        Forall,
        CountExists
    };

    struct Formula
    {
        FormulaKind kind = FormulaKind::True;
        PatternAtom atom;                    // Atom
        Term lhs, rhs;                       // Equal
        std::vector<FormulaPtr> children;    // Not: 1, Implies: 2, And/Or: any
        std::vector<std::string> variables;  // quantifiers; CountExists binds one
        int lo = 0, hi = -1;                 // CountExists bounds, hi = -1 means unbounded

        static auto truth(bool) -> FormulaPtr;
        static auto make_atom(PatternAtom) -> FormulaPtr;
        static auto equal(Term, Term) -> FormulaPtr;
        static auto negate(FormulaPtr) -> FormulaPtr;
        static auto conjunction(std::vector<FormulaPtr>) -> FormulaPtr;
        static auto disjunction(std::vector<FormulaPtr>) -> FormulaPtr;
        static auto implies(FormulaPtr, FormulaPtr) -> FormulaPtr;
        static auto exists(std::vector<std::string>, FormulaPtr) -> FormulaPtr;
        static auto forall(std::vector<std::string>, FormulaPtr) -> FormulaPtr;
        static auto count_exists(std::string, int lo, int hi, FormulaPtr) -> FormulaPtr;
    };

    auto formulas_equal(const Formula &, const Formula &) -> bool;
    auto formula_constants(const Formula &) -> std::set<Value>;
    auto formula_free_variables(const Formula &) -> std::set<std::string>;
    auto formula_relations(const Formula &) -> std::set<std::string>;

    // Negation normal form: negations only in front of atoms and equalities,
    // implications expanded. Counting quantifiers are kept (and negated as a
    // whole if needed).
    auto nnf(const FormulaPtr &, bool negated = false) -> FormulaPtr;

    struct FOQuery
    {
        std::string name = "q";
        std::vector<std::string> free_variables;
        FormulaPtr body;

        auto constants() const -> std::set<Value>;
        auto is_universal() const -> bool;
        auto is_existential() const -> bool;
        auto is_ucq() const -> bool;
        auto is_cq_neg() const -> bool;
        auto uses_counting() const -> bool;
    };

    using Tuple = std::vector<Value>;
    using TupleSet = std::set<Tuple>;
    using Assignment = std::map<std::string, Value>;

    // A formula compiled against a fixed value coding; evaluation takes a coded
    // instance and the list of codes forming the active domain.
    class CompiledFormula
    {
        public:
            struct Node;

        private:
            std::shared_ptr<Node> _root;
            std::vector<std::string> _relations;
            std::vector<std::string> _free;
            int _slots = 0;

        public:
            CompiledFormula(const Formula &, const std::vector<std::string> & free_variables, const Coding &);

            auto slot_count() const -> int { return _slots; }

            // free variable i lives in slot i
            auto eval(const CodedInstance &, const std::vector<int> & domain, std::vector<int> & slots) const -> bool;
    };

    auto eval_fo(const Formula &, const Instance &, const Assignment & = { }) -> bool;

    // Tuples over dom(I) and dom(q) satisfying q, nulls included.
    auto query_answers(const FOQuery &, const Instance &) -> TupleSet;

    auto constant_tuples(const TupleSet &) -> TupleSet;

    enum class EmptyCert
    {
        None,
        All
    };

    // Intersection of the answers over the family, constant tuples only. With
    // EmptyCert::All an empty family yields every tuple over `universe`.
    auto certain_answers(const FOQuery &, const std::vector<Instance> &, EmptyCert = EmptyCert::None,
            const std::set<Value> & universe = { }) -> TupleSet;

    auto all_tuples(const std::set<Value> & values, std::size_t width) -> TupleSet;

    // Name of the i-th reserved fresh constant; such names cannot be written in
    // input files.
    auto fresh_constant(int i) -> Value;
    auto is_fresh_constant(const Value &) -> bool;

    // Certain answers over poss(T), using |nulls(T)| + extra_fresh fresh
    // constants; fresh constants are introduced in first-use order.
    auto cert_poss(const FOQuery &, const Instance & T, std::size_t null_cap = 8, std::size_t extra_fresh = 0) -> TupleSet;
}

#endif
