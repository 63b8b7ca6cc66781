/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef DX_GUARD_SRC_GCWA_HH
#define DX_GUARD_SRC_GCWA_HH 1

#include "logic.hh"
#include "model.hh"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace dx
{
    // exists y: R_1(x_1) /\ ... /\ ~Q_1(w_1) /\ ... /\ v_1 != v'_1 /\ ...
    // Templates from normalize_negation may still hold equalities and the
    // query's free variables; specialize removes both.
    struct ExistentialConjunct
    {
        std::vector<std::string> variables;
        std::vector<PatternAtom> positive;
        std::vector<PatternAtom> negative;
        std::vector<std::pair<Term, Term>> equalities;
        std::vector<std::pair<Term, Term>> disequalities;
        std::set<Value> constants;

        // k + sum |w_i| + 2m
        auto s() const -> std::size_t;
        auto to_formula() const -> FormulaPtr;
        auto to_string() const -> std::string;
    };

    auto normalize_negation(const FOQuery &) -> std::vector<ExistentialConjunct>;

    // Substitutes the tuple for the free variables and unifies equalities.
    // Absent when the conjunct is unsatisfiable on its face. The extra
    // constants join the conjunct's constant set.
    auto specialize(const ExistentialConjunct &, const std::vector<std::string> & free_variables, const Tuple &,
            const std::set<Value> & extra_constants = { }) -> std::optional<ExistentialConjunct>;

    // Whether the conjunct holds in the instance, with quantifiers ranging over
    // dom(I) and the conjunct's constants. Nulls behave as distinct constants.
    auto satisfies_conjunct(const ExistentialConjunct &, const Instance &) -> bool;

    struct CandidatePair
    {
        Instance instance;
        std::vector<std::string> variables;    // X_i in first-occurrence order
        Assignment alpha;
    };

    struct EquivRelation
    {
        std::vector<std::set<Value>> classes;   // sorted

        auto same(const Value &, const Value &) const -> bool;
        auto class_of(const Value &) const -> const std::set<Value> *;
    };

    // The smallest equivalence relation witnessing compatibility, if any.
    auto compatible_and_relation(const std::vector<CandidatePair> &) -> std::optional<EquivRelation>;

    auto join_pairs(const std::vector<CandidatePair> &, const EquivRelation &) -> std::pair<Instance, Assignment>;

    // Whether some nonempty finite set of minimal instances of poss(T) has a
    // union satisfying the (specialized) conjunct. T must be a core with
    // packed blocks of at most bs nulls.
    auto core_eval(const Instance & t, const ExistentialConjunct &, std::size_t bs) -> bool;

    auto eval_gcwa_star_universal(const Instance & core, const FOQuery &, const Tuple &, std::size_t bs) -> bool;

    auto answers_gcwa_star_universal(const Instance & core, const FOQuery &, std::size_t bs) -> TupleSet;

    // Constant answers of a union of conjunctive queries on a universal solution.
    auto answers_owa_homclosed(const Instance & universal, const FOQuery &) -> TupleSet;

    // Exhaustive search over unions of at most s minimal instances of
    // poss(Core(M,S)); no packedness needed.
    auto eval_gcwa_star_universal_general(const SchemaMapping &, const Instance & source, const FOQuery &,
            const Tuple &, std::size_t null_cap = 8) -> bool;

    auto answers_gcwa_star_universal_general(const SchemaMapping &, const Instance & source, const FOQuery &,
            std::size_t null_cap = 8) -> TupleSet;
}

#endif
