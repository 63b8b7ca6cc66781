/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <dx/dx.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

using nlohmann::json;

using std::cerr;
using std::cout;
using std::string;
using std::unique_ptr;

namespace
{
    struct Failure
    {
        int code;
    };

    auto check(dx_status s) -> void
    {
        if (s != DX_OK) {
            cerr << "dx: " << dx_last_error() << '\n';
            throw Failure{ int(s) };
        }
    }

    struct MappingFree { auto operator() (dx_mapping * p) const -> void { dx_mapping_free(p); } };
    struct InstanceFree { auto operator() (dx_instance * p) const -> void { dx_instance_free(p); } };
    struct QueryFree { auto operator() (dx_query * p) const -> void { dx_query_free(p); } };
    struct StringFree { auto operator() (char * p) const -> void { dx_string_free(p); } };

    using Mapping = unique_ptr<dx_mapping, MappingFree>;
    using InstanceHandle = unique_ptr<dx_instance, InstanceFree>;
    using Query = unique_ptr<dx_query, QueryFree>;
    using Text = unique_ptr<char, StringFree>;

    auto load_mapping(const string & path) -> Mapping
    {
        dx_mapping * m = nullptr;
        check(dx_mapping_load(path.c_str(), &m));
        return Mapping(m);
    }

    auto load_instance(const dx_mapping * m, bool source, const string & path) -> InstanceHandle
    {
        dx_instance * i = nullptr;
        check(dx_instance_load(m, source, path.c_str(), &i));
        return InstanceHandle(i);
    }

    auto load_query(const dx_mapping * m, const string & path) -> Query
    {
        dx_query * q = nullptr;
        check(dx_query_load(m, path.c_str(), &q));
        return Query(q);
    }

    auto emit(const string & text, const string & output) -> void
    {
        if (output.empty() || output == "-") {
            cout << text;
            if (! text.empty() && text.back() != '\n')
                cout << '\n';
            return;
        }
        std::ofstream out(output);
        if (! out) {
            cerr << "dx: cannot write " << output << '\n';
            throw Failure{ DX_ERR_USAGE };
        }
        out << text;
        if (! text.empty() && text.back() != '\n')
            out << '\n';
    }

    auto instance_text(const dx_instance * i) -> string
    {
        char * s = nullptr;
        check(dx_instance_format(i, &s));
        return Text(s).get();
    }

    struct Options
    {
        string mapping, source, target, query, output, semantics = "gcwa-star", format = "json", empty_cert = "none",
               constants;
        bool oracle = false, force_oracle = false, general = false, per_block = false;
        std::size_t budget_fresh = 0, budget_atoms = 0, budget_rounds = 0, null_cap = 0, block_size = 0,
            random = 0;
        long seed = -1;
    };

    auto eval_options(const Options & o) -> dx_eval_options
    {
        dx_eval_options e;
        dx_eval_options_init(&e);
        check(dx_parse_semantics(o.semantics.c_str(), &e.semantics));
        e.oracle = o.oracle;
        e.force_oracle = o.force_oracle;
        e.general = o.general;
        e.empty_cert_all = o.empty_cert == "all";
        if (o.budget_fresh)
            e.budget_fresh = o.budget_fresh;
        if (o.budget_atoms)
            e.budget_atoms = o.budget_atoms;
        if (o.budget_rounds)
            e.budget_rounds = o.budget_rounds;
        if (o.null_cap)
            e.null_cap = o.null_cap;
        return e;
    }

    // the target instance to inspect: -t if given, else Core(M,S)
    auto inspected(const dx_mapping * m, const Options & o) -> InstanceHandle
    {
        if (! o.target.empty())
            return load_instance(m, false, o.target);
        if (o.source.empty()) {
            cerr << "dx: need --source or --target\n";
            throw Failure{ DX_ERR_USAGE };
        }
        auto s = load_instance(m, true, o.source);
        dx_instance * c = nullptr;
        check(dx_core_solution(m, s.get(), &c));
        return InstanceHandle(c);
    }

    auto run_compare(const Options & o) -> int
    {
        auto e = eval_options(o);
        if (o.random) {
            auto seed = o.seed >= 0 ? std::uint32_t(o.seed)
                : std::uint32_t(std::getenv("DX_SEED") ? std::strtoul(std::getenv("DX_SEED"), nullptr, 10) : 20260101UL);
            json report{ { "seed", seed }, { "triples", o.random } };
            json disagreements = json::array();
            std::size_t agreed = 0;
            for (std::size_t i = 0 ; i < o.random ; ++i) {
                char * mt = nullptr, * st = nullptr, * qt = nullptr;
                check(dx_random_triple(seed, i, &mt, &st, &qt));
                Text mtext(mt), stext(st), qtext(qt);
                dx_mapping * m = nullptr;
                check(dx_mapping_parse(mt, "<random mapping>", &m));
                Mapping mh(m);
                dx_instance * s = nullptr;
                check(dx_instance_parse(m, 1, st, "<random source>", &s));
                InstanceHandle sh(s);
                dx_query * q = nullptr;
                check(dx_query_parse(m, qt, "<random query>", &q));
                Query qh(q);
                int agree = 0;
                char * out = nullptr;
                check(dx_compare(m, s, q, &e, &agree, &out));
                Text result(out);
                if (agree)
                    ++agreed;
                else
                    disagreements.push_back(json{ { "index", i }, { "mapping", mt }, { "source", st },
                            { "report", json::parse(out) } });
            }
            report["agree"] = agreed;
            report["disagreements"] = disagreements;
            emit(o.format == "text" ? "agree: " + string(agreed == o.random ? "true" : "false") + " ("
                    + std::to_string(agreed) + "/" + std::to_string(o.random) + ")" : report.dump(2), o.output);
            return agreed == o.random ? 0 : 4;
        }

        auto m = load_mapping(o.mapping);
        auto s = load_instance(m.get(), true, o.source);
        auto q = load_query(m.get(), o.query);
        int agree = 0;
        char * out = nullptr;
        check(dx_compare(m.get(), s.get(), q.get(), &e, &agree, &out));
        Text result(out);
        emit(o.format == "text" ? string("agree: ") + (agree ? "true" : "false") : string(out), o.output);
        return agree ? 0 : 4;
    }

    auto run(int argc, char ** argv) -> int
    {
        CLI::App app{ "dx: data exchange with closed-world query answering" };
        app.require_subcommand(1);
        Options o;

        auto needs_mapping = [&] (CLI::App * c) {
            c->add_option("-m,--mapping", o.mapping, "schema mapping file")->required();
        };
        auto add_output = [&] (CLI::App * c) {
            c->add_option("-o,--output", o.output, "output file (default stdout)");
        };
        auto add_budgets = [&] (CLI::App * c) {
            c->add_option("--budget-fresh", o.budget_fresh, "fresh constants available to the oracle");
            c->add_option("--budget-atoms", o.budget_atoms, "largest target instance the oracle builds");
            c->add_option("--budget-rounds", o.budget_rounds, "T* fixpoint rounds");
            c->add_option("--null-cap", o.null_cap, "largest null count for whole-instance enumeration");
        };

        auto chase = app.add_subcommand("chase", "emit the canonical universal solution");
        needs_mapping(chase);
        chase->add_option("-s,--source", o.source, "source instance")->required();
        add_output(chase);

        auto core = app.add_subcommand("core", "emit Core(M,S)");
        needs_mapping(core);
        core->add_option("-s,--source", o.source, "source instance")->required();
        add_output(core);

        auto blocks = app.add_subcommand("blocks", "atom blocks of Core(M,S) or of a target instance");
        needs_mapping(blocks);
        blocks->add_option("-s,--source", o.source, "source instance");
        blocks->add_option("-t,--target", o.target, "target instance (instead of Core(M,S))");
        add_output(blocks);

        auto minrep = app.add_subcommand("minrep", "representatives of the minimal possible worlds");
        needs_mapping(minrep);
        minrep->add_option("-s,--source", o.source, "source instance");
        minrep->add_option("-t,--target", o.target, "target instance (instead of Core(M,S))");
        minrep->add_option("-C,--constants", o.constants, "comma-separated constants C");
        minrep->add_flag("--per-block", o.per_block, "enumerate min_C(T,B) block by block");
        minrep->add_option("--block-size", o.block_size, "largest block null count allowed");
        minrep->add_option("--null-cap", o.null_cap, "largest null count for whole-instance enumeration");
        add_output(minrep);

        auto eval = app.add_subcommand("eval", "answer a query");
        needs_mapping(eval);
        eval->add_option("-s,--source", o.source, "source instance")->required();
        eval->add_option("-q,--query", o.query, "query file")->required();
        eval->add_option("--semantics", o.semantics, "owa, cwa, rcwa, gcwa, egcwa, pws or gcwa-star")
            ->check(CLI::IsMember({ "owa", "cwa", "rcwa", "gcwa", "egcwa", "pws", "gcwa-star" }));
        eval->add_flag("--oracle", o.oracle, "allow the enumeration oracle");
        eval->add_flag("--force-oracle", o.force_oracle, "use the oracle even when a direct evaluator applies");
        eval->add_flag("--general", o.general, "gcwa-star: exhaustive union search, no packedness needed");
        eval->add_option("--empty-cert", o.empty_cert, "certain answers over an empty family")
            ->check(CLI::IsMember({ "none", "all" }));
        eval->add_option("--format", o.format, "json or text")->check(CLI::IsMember({ "json", "text" }));
        add_budgets(eval);
        add_output(eval);

        auto compare = app.add_subcommand("compare", "fast path vs. general evaluator vs. oracle under gcwa-star");
        compare->add_option("-m,--mapping", o.mapping, "schema mapping file");
        compare->add_option("-s,--source", o.source, "source instance");
        compare->add_option("-q,--query", o.query, "query file");
        compare->add_option("--random", o.random, "compare on this many generated triples instead");
        compare->add_option("--seed", o.seed, "generator seed (default DX_SEED)");
        compare->add_option("--format", o.format, "json or text")->check(CLI::IsMember({ "json", "text" }));
        add_budgets(compare);
        add_output(compare);

        try {
            app.parse(argc, argv);
        }
        catch (const CLI::ParseError & e) {
            return app.exit(e) == 0 ? 0 : DX_ERR_USAGE;
        }

        try {
            if (*compare) {
                if (! o.random && (o.mapping.empty() || o.source.empty() || o.query.empty())) {
                    cerr << "dx: compare needs --mapping, --source and --query, or --random N\n";
                    return DX_ERR_USAGE;
                }
                return run_compare(o);
            }

            auto m = load_mapping(o.mapping);
            if (*chase || *core) {
                auto s = load_instance(m.get(), true, o.source);
                dx_instance * t = nullptr;
                check(*chase ? dx_chase(m.get(), s.get(), &t) : dx_core_solution(m.get(), s.get(), &t));
                InstanceHandle th(t);
                emit(instance_text(t), o.output);
            }
            else if (*blocks) {
                auto t = inspected(m.get(), o);
                char * out = nullptr;
                check(dx_blocks(t.get(), &out));
                emit(Text(out).get(), o.output);
            }
            else if (*minrep) {
                auto t = inspected(m.get(), o);
                dx_eval_options d;
                dx_eval_options_init(&d);
                char * out = nullptr;
                check(dx_minrep(t.get(), o.constants.c_str(), o.per_block, o.block_size, o.null_cap ? o.null_cap : d.null_cap, &out));
                emit(Text(out).get(), o.output);
            }
            else if (*eval) {
                auto s = load_instance(m.get(), true, o.source);
                auto q = load_query(m.get(), o.query);
                auto e = eval_options(o);
                char * out = nullptr;
                check(dx_eval(m.get(), s.get(), q.get(), &e, &out));
                Text result(out);
                auto j = json::parse(out);
                for (auto & d : j["meta"]["diagnostics"])
                    cerr << "dx: " << d.get<string>() << '\n';
                if (o.format == "text") {
                    string lines;
                    for (auto & row : j["answers"]) {
                        string line = "(";
                        for (std::size_t k = 0 ; k < row.size() ; ++k)
                            line += (k ? "," : "") + row[k].get<string>();
                        lines += line + ")\n";
                    }
                    emit(lines, o.output);
                }
                else
                    emit(out, o.output);
            }
            return DX_OK;
        }
        catch (const Failure & f) {
            return f.code;
        }
    }
}

auto main(int argc, char ** argv) -> int
{
    try {
        return run(argc, argv);
    }
    catch (const std::exception & e) {
        cerr << "dx: " << e.what() << '\n';
        return DX_ERR_INTERNAL;
    }
}
