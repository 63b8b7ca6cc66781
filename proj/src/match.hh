/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef DX_GUARD_SRC_MATCH_HH
#define DX_GUARD_SRC_MATCH_HH 1

#include "model.hh"

#include <functional>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace dx
{
    // Dense integer codes for a value set; code order is canonical order.
    class Coding
    {
        private:
            std::vector<Value> _values;
            std::unordered_map<Value, int, ValueHash> _index;

        public:
            Coding() = default;
            explicit Coding(const std::set<Value> & values);

            auto code(const Value &) const -> int;
            auto value(int c) const -> const Value & { return _values[c]; }
            auto size() const -> int { return int(_values.size()); }
            auto values() const -> const std::vector<Value> & { return _values; }
    };

    struct TupleHash
    {
        auto operator() (const std::vector<int> &) const -> std::size_t;
    };

    using TupleSet_ = std::unordered_set<std::vector<int>, TupleHash>;

    // An instance's atoms grouped per relation and coded against a Coding.
    class CodedInstance
    {
        private:
            std::map<std::string, int> _relations;
            std::vector<std::vector<std::vector<int>>> _tuples;
            std::vector<TupleSet_> _members;

        public:
            CodedInstance() = default;
            CodedInstance(const Instance &, const Coding &);

            auto relation(const std::string &) const -> int;
            auto add_relation(const std::string &) -> int;
            auto add(int rel, std::vector<int> tuple) -> bool;

            auto tuples(int rel) const -> const std::vector<std::vector<int>> &;
            auto contains(int rel, const std::vector<int> &) const -> bool;
            auto relation_count() const -> int { return int(_tuples.size()); }
    };

    struct Slot
    {
        bool is_var;
        int index;   // variable number, or value code (-1: value absent from the target)
    };

    struct CodedPattern
    {
        int relation;   // -1: relation absent from the target
        std::vector<Slot> args;
    };

    // Enumerates assignments of variables 0..n-1 (entries of `initial` that are
    // not -1 are fixed) such that every pattern atom lands in the target. The
    // callback returns false to stop. Variables are tried by descending
    // occurrence count, candidate values in code order.
    auto match_patterns(const std::vector<CodedPattern> &, int variable_count, const CodedInstance & target,
            const std::vector<int> & initial, const std::function<bool (const std::vector<int> &)> & callback,
            const std::vector<std::vector<int>> * candidates = nullptr) -> void;

    // All assignments of the variables of the pattern atoms (extending `fixed`)
    // under which every atom is in the instance, in canonical order of the
    // variables' first occurrence.
    auto for_each_match(const std::vector<PatternAtom> &, const Instance &, const std::map<std::string, Value> & fixed,
            const std::function<bool (const std::map<std::string, Value> &)> &) -> void;

    // Helper for pattern atoms written with named variables and constant terms.
    class PatternCompiler
    {
        private:
            std::map<std::string, int> _vars;
            std::vector<std::string> _names;

        public:
            auto variable(const std::string &) -> int;
            auto lookup(const std::string &) const -> int;
            auto variable_count() const -> int { return int(_names.size()); }
            auto names() const -> const std::vector<std::string> & { return _names; }

            auto compile(const PatternAtom &, const CodedInstance &, const Coding &) -> CodedPattern;
            auto compile(const std::vector<PatternAtom> &, const CodedInstance &, const Coding &) -> std::vector<CodedPattern>;
    };
}

#endif
