/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef DX_GUARD_SRC_ORACLE_HH
#define DX_GUARD_SRC_ORACLE_HH 1

#include "logic.hh"
#include "model.hh"

#include <functional>
#include <set>
#include <string>
#include <vector>

namespace dx
{
    // All enumeration happens over const(S) u dom(Sigma) u query constants
    // plus `fresh_constants` reserved fresh constants, with at most
    // `max_atoms` atoms per target instance.
    struct Budget
    {
        std::size_t fresh_constants = 4;
        std::size_t max_atoms = 12;
        std::size_t max_fixpoint_rounds = 3;
        std::size_t null_cap = 8;
        std::size_t state_limit = 2000000;
    };

    enum class FamilyRole
    {
        Minimal,
        TStar,
        GcwaStar,
        Rcwa,
        Gcwa,
        Egcwa,
        Pws
    };

    struct SolutionFamily
    {
        FamilyRole role = FamilyRole::Minimal;
        std::vector<Instance> members;      // sorted, unique
        std::set<Value> universe;
        Budget budget;
        bool fixpoint_reached = true;
        bool truncated = false;              // some member needed more fresh constants

        auto contains(const Instance &) const -> bool;
    };

    auto oracle_universe(const SchemaMapping &, const Instance & source, const std::set<Value> & extra, const Budget &)
        -> std::set<Value>;

    // Ground minimal solutions over the budget universe. Mappings with only
    // st-tgds go through min_C(Core); anything else (or force_general) uses
    // a repair search from the empty instance.
    auto minimal_ground_solutions(const SchemaMapping &, const Instance & source, const Budget &,
            const std::set<Value> & extra = { }, bool force_general = false) -> SolutionFamily;

    // Ground solutions T' containing `start` that are minimal among such.
    auto minimal_solutions_containing(const SchemaMapping &, const Instance & source, const Instance & start,
            const std::set<Value> & universe, const Budget &) -> std::vector<Instance>;

    struct TStarLevels
    {
        std::vector<std::vector<Instance>> levels;   // levels[i] is T^i, each sorted
        bool fixpoint_reached = false;
        std::set<Value> universe;
    };

    auto tstar_levels(const SchemaMapping &, const Instance & source, const Budget &,
            const std::set<Value> & extra = { }) -> TStarLevels;

    auto tstar_fixpoint(const SchemaMapping &, const Instance & source, const Budget &,
            const std::set<Value> & extra = { }) -> SolutionFamily;

    // Calls f with every union of one or more members having at most
    // max_atoms atoms. With `up_to_fresh`, unions equal up to a permutation of
    // fresh constants are visited once. Stops when f returns false.
    auto for_each_union(const std::vector<Instance> & members, const Budget &, bool up_to_fresh,
            const std::function<bool (const Instance &)> & f) -> void;

    auto gcwa_star_solutions(const SchemaMapping &, const Instance & source, const Budget &,
            const std::set<Value> & extra = { }) -> SolutionFamily;

    // For st-tgds and egds: T is a union of minimal ground solutions and
    // satisfies the egds.
    auto is_gcwa_star_solution(const SchemaMapping &, const Instance & source, const Instance & t, const Budget &) -> bool;

    enum class Semantics
    {
        Owa,
        Cwa,
        Rcwa,
        Gcwa,
        Egcwa,
        Pws,
        GcwaStar
    };

    auto semantics_name(Semantics) -> std::string;
    auto parse_semantics(const std::string &) -> Semantics;

    struct OracleOptions
    {
        Budget budget;
        EmptyCert empty_cert = EmptyCert::None;
        bool force_general = false;
    };

    struct SemanticsAnswer
    {
        TupleSet answers;
        std::string path;
        std::vector<std::string> diagnostics;
        std::size_t family_size = 0;
        bool fixpoint_reached = true;
        Budget budget;
    };

    auto answers_semantics(const SchemaMapping &, const Instance & source, const FOQuery &, Semantics,
            const OracleOptions & = { }) -> SemanticsAnswer;

    // Streaming intersection of constant answers, tuples with fresh constants
    // dropped. add returns false once nothing is left.
    class CertAccumulator
    {
        private:
            const FOQuery & _q;
            bool _started = false;
            TupleSet _current;
            std::size_t _seen = 0;

        public:
            explicit CertAccumulator(const FOQuery & q) : _q(q) { }

            auto add(const Instance &) -> bool;
            auto seen() const -> std::size_t { return _seen; }
            auto result(EmptyCert, const std::set<Value> & universe) const -> TupleSet;
    };
}

#endif
