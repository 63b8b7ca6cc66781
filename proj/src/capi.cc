/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <dx/dx.h>

#include "chase.hh"
#include "corelib.hh"
#include "driver.hh"
#include "random.hh"
#include "textio.hh"

#include <cstring>
#include <sstream>

using namespace dx;

using std::set;
using std::string;

struct dx_mapping
{
    SchemaMapping m;
};

struct dx_instance
{
    Instance i;
};

struct dx_query
{
    FOQuery q;
};

namespace
{
    thread_local string last_error;
    thread_local string last_code;

    auto fail(dx_status s, const string & message, const string & code) -> dx_status
    {
        last_error = message;
        last_code = code;
        return s;
    }

    template <typename F_>
    auto guard(F_ && f) -> dx_status
    {
        try {
            f();
            last_error.clear();
            last_code.clear();
            return DX_OK;
        }
        catch (const Error & e) {
            return fail(dx_status(exit_code_for(e.code())), e.what(), error_code_name(e.code()));
        }
        catch (const std::bad_alloc &) {
            return fail(DX_ERR_BUDGET, "out of memory", "BudgetExceeded");
        }
        catch (const std::exception & e) {
            return fail(DX_ERR_INTERNAL, e.what(), "Internal");
        }
    }

    auto copy_out(const string & s) -> char *
    {
        auto p = static_cast<char *>(std::malloc(s.size() + 1));
        if (! p)
            throw std::bad_alloc();
        std::memcpy(p, s.c_str(), s.size() + 1);
        return p;
    }

    auto need(const void * p, const char * what) -> void
    {
        if (! p)
            throw Error(ErrorCode::Usage, string(what) + " must not be NULL");
    }

    auto text_of(const char * text, const char * origin) -> SourceText
    {
        need(text, "text");
        return SourceText{ text, origin ? origin : "<input>" };
    }

    auto target_schema(const dx_mapping * m, int source) -> const Schema &
    {
        return source ? m->m.source : m->m.target;
    }

    auto options_from(const dx_eval_options * o) -> EvalRequest
    {
        dx_eval_options d;
        dx_eval_options_init(&d);
        if (! o)
            o = &d;
        EvalRequest r;
        r.semantics = Semantics(o->semantics);
        r.oracle = o->oracle;
        r.force_oracle = o->force_oracle;
        r.general = o->general;
        r.oracle_options.empty_cert = o->empty_cert_all ? EmptyCert::All : EmptyCert::None;
        r.oracle_options.budget.fresh_constants = o->budget_fresh;
        r.oracle_options.budget.max_atoms = o->budget_atoms;
        r.oracle_options.budget.max_fixpoint_rounds = o->budget_rounds;
        r.oracle_options.budget.null_cap = o->null_cap;
        return r;
    }

    auto parse_constant_list(const char * s) -> set<Value>
    {
        set<Value> result;
        if (! s)
            return result;
        std::stringstream in(s);
        string item;
        while (std::getline(in, item, ','))
            if (! item.empty())
                result.insert(Value::constant(item));
        return result;
    }
}

extern "C" {

const char * dx_version(void)
{
    return "0.1.0";
}

const char * dx_last_error(void)
{
    return last_error.c_str();
}

const char * dx_last_error_code(void)
{
    return last_code.c_str();
}

void dx_string_free(char * s)
{
    std::free(s);
}

void dx_eval_options_init(dx_eval_options * o)
{
    if (! o)
        return;
    Budget b;
    *o = dx_eval_options{ DX_GCWA_STAR, 0, 0, 0, 0, b.fresh_constants, b.max_atoms, b.max_fixpoint_rounds, b.null_cap };
}

dx_status dx_parse_semantics(const char * name, dx_semantics * out)
{
    return guard([&] {
            need(name, "name");
            need(out, "out");
            *out = dx_semantics(parse_semantics(name));
            });
}

dx_status dx_mapping_parse(const char * text, const char * origin, dx_mapping ** out)
{
    return guard([&] {
            need(out, "out");
            *out = new dx_mapping{ parse_mapping(text_of(text, origin)) };
            });
}

dx_status dx_mapping_load(const char * path, dx_mapping ** out)
{
    return guard([&] {
            need(path, "path");
            need(out, "out");
            *out = new dx_mapping{ parse_mapping(read_source(path)) };
            });
}

dx_status dx_mapping_format(const dx_mapping * m, char ** out)
{
    return guard([&] {
            need(m, "mapping");
            need(out, "out");
            *out = copy_out(format_mapping(m->m));
            });
}

int dx_mapping_only_st_tgds(const dx_mapping * m)
{
    return m && m->m.only_st_tgds();
}

void dx_mapping_free(dx_mapping * m)
{
    delete m;
}

dx_status dx_instance_parse(const dx_mapping * m, int source, const char * text, const char * origin, dx_instance ** out)
{
    return guard([&] {
            need(m, "mapping");
            need(out, "out");
            *out = new dx_instance{ parse_instance(text_of(text, origin), target_schema(m, source)) };
            });
}

dx_status dx_instance_load(const dx_mapping * m, int source, const char * path, dx_instance ** out)
{
    return guard([&] {
            need(m, "mapping");
            need(path, "path");
            need(out, "out");
            *out = new dx_instance{ parse_instance(read_source(path), target_schema(m, source)) };
            });
}

dx_status dx_instance_format(const dx_instance * i, char ** out)
{
    return guard([&] {
            need(i, "instance");
            need(out, "out");
            *out = copy_out(format_instance(i->i));
            });
}

size_t dx_instance_size(const dx_instance * i)
{
    return i ? i->i.size() : 0;
}

size_t dx_instance_null_count(const dx_instance * i)
{
    return i ? i->i.nulls().size() : 0;
}

void dx_instance_free(dx_instance * i)
{
    delete i;
}

dx_status dx_query_parse(const dx_mapping * m, const char * text, const char * origin, dx_query ** out)
{
    return guard([&] {
            need(m, "mapping");
            need(out, "out");
            *out = new dx_query{ parse_query(text_of(text, origin), m->m.target) };
            });
}

dx_status dx_query_load(const dx_mapping * m, const char * path, dx_query ** out)
{
    return guard([&] {
            need(m, "mapping");
            need(path, "path");
            need(out, "out");
            *out = new dx_query{ parse_query(read_source(path), m->m.target) };
            });
}

dx_status dx_query_format(const dx_query * q, char ** out)
{
    return guard([&] {
            need(q, "query");
            need(out, "out");
            *out = copy_out(format_query(q->q));
            });
}

void dx_query_free(dx_query * q)
{
    delete q;
}

dx_status dx_chase(const dx_mapping * m, const dx_instance * s, dx_instance ** out)
{
    return guard([&] {
            need(m, "mapping");
            need(s, "source");
            need(out, "out");
            *out = new dx_instance{ canonical_solution(m->m, s->i) };
            });
}

dx_status dx_core_solution(const dx_mapping * m, const dx_instance * s, dx_instance ** out)
{
    return guard([&] {
            need(m, "mapping");
            need(s, "source");
            need(out, "out");
            *out = new dx_instance{ core_solution(m->m, s->i) };
            });
}

dx_status dx_core_of(const dx_instance * i, dx_instance ** out)
{
    return guard([&] {
            need(i, "instance");
            need(out, "out");
            *out = new dx_instance{ core_of(i->i) };
            });
}

dx_status dx_is_solution(const dx_mapping * m, const dx_instance * s, const dx_instance * t, int * out)
{
    return guard([&] {
            need(m, "mapping");
            need(s, "source");
            need(t, "target");
            need(out, "out");
            *out = is_solution(m->m, s->i, t->i);
            });
}

dx_status dx_blocks(const dx_instance * i, char ** out)
{
    return guard([&] {
            need(i, "instance");
            need(out, "out");
            *out = copy_out(blocks_json(i->i).dump(2));
            });
}

dx_status dx_minrep(const dx_instance * i, const char * constants, int per_block, size_t block_size, size_t null_cap,
        char ** out)
{
    return guard([&] {
            need(i, "instance");
            need(out, "out");
            size_t bs = block_size ? block_size : atom_blocks(i->i).max_nulls();
            *out = copy_out(minrep_json(i->i, parse_constant_list(constants), per_block, bs, null_cap).dump(2));
            });
}

dx_status dx_eval(const dx_mapping * m, const dx_instance * s, const dx_query * q, const dx_eval_options * o, char ** out)
{
    return guard([&] {
            need(m, "mapping");
            need(s, "source");
            need(q, "query");
            need(out, "out");
            auto req = options_from(o);
            auto r = evaluate(m->m, s->i, q->q, req);
            *out = copy_out(eval_json(q->q, req, r).dump(2));
            });
}

dx_status dx_compare(const dx_mapping * m, const dx_instance * s, const dx_query * q, const dx_eval_options * o,
        int * agree, char ** out)
{
    return guard([&] {
            need(m, "mapping");
            need(s, "source");
            need(q, "query");
            need(out, "out");
            auto c = compare_paths(m->m, s->i, q->q, options_from(o).oracle_options.budget);
            if (agree)
                *agree = c.agree;
            *out = copy_out(comparison_json(q->q, c).dump(2));
            });
}

dx_status dx_random_triple(uint32_t seed, size_t index, char ** mapping_text, char ** source_text, char ** query_text)
{
    return guard([&] {
            need(mapping_text, "mapping_text");
            need(source_text, "source_text");
            need(query_text, "query_text");
            std::seed_seq seq{ seed, std::uint32_t(index), std::uint32_t(index >> 32) };
            std::mt19937 rng(seq);
            auto t = random_triple(rng);
            *mapping_text = copy_out(format_mapping(t.mapping));
            *source_text = copy_out(format_instance(t.source));
            *query_text = copy_out(format_query(t.query));
            });
}

}
