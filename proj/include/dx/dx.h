/* vim: set sw=4 sts=4 et foldmethod=syntax : */

/* C interface to the dx data-exchange engine. Handles are opaque; every
 * function returning dx_status leaves a message for dx_last_error() on
 * failure. Strings handed out through char ** must be released with
 * dx_string_free. */

#ifndef DX_GUARD_INCLUDE_DX_DX_H
#define DX_GUARD_INCLUDE_DX_DX_H 1

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  define DX_API __declspec(dllexport)
#else
#  define DX_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct dx_mapping dx_mapping;
typedef struct dx_instance dx_instance;
typedef struct dx_query dx_query;

/* numeric values double as process exit codes for the command-line tool */
typedef enum dx_status
{
    DX_OK = 0,
    DX_ERR_USAGE = 1,           /* parse errors, bad arguments, unreadable files */
    DX_ERR_PRECONDITION = 2,    /* not packed, not a core, not universal, unsupported semantics */
    DX_ERR_BUDGET = 3,
    DX_ERR_INTERNAL = 4
} dx_status;

typedef enum dx_semantics
{
    DX_OWA = 0,
    DX_CWA,
    DX_RCWA,
    DX_GCWA,
    DX_EGCWA,
    DX_PWS,
    DX_GCWA_STAR
} dx_semantics;

typedef struct dx_eval_options
{
    dx_semantics semantics;
    int oracle;                 /* allow the enumeration oracle */
    int force_oracle;           /* use it even where a direct evaluator exists */
    int general;                /* gcwa-star, universal queries: exhaustive union search */
    int empty_cert_all;         /* cert over an empty family is every tuple, not none */
    size_t budget_fresh;
    size_t budget_atoms;
    size_t budget_rounds;
    size_t null_cap;
} dx_eval_options;

DX_API const char * dx_version(void);

/* message of the last failure on this thread, or "" */
DX_API const char * dx_last_error(void);
/* name of the engine error code behind the last failure, or "" */
DX_API const char * dx_last_error_code(void);

DX_API void dx_string_free(char *);

DX_API void dx_eval_options_init(dx_eval_options *);
DX_API dx_status dx_parse_semantics(const char * name, dx_semantics * out);

/* `origin` names the text in diagnostics and may be NULL */
DX_API dx_status dx_mapping_parse(const char * text, const char * origin, dx_mapping ** out);
DX_API dx_status dx_mapping_load(const char * path, dx_mapping ** out);
DX_API dx_status dx_mapping_format(const dx_mapping *, char ** out);
DX_API int dx_mapping_only_st_tgds(const dx_mapping *);
DX_API void dx_mapping_free(dx_mapping *);

/* instances over the source schema (source != 0) or the target schema */
DX_API dx_status dx_instance_parse(const dx_mapping *, int source, const char * text, const char * origin, dx_instance ** out);
DX_API dx_status dx_instance_load(const dx_mapping *, int source, const char * path, dx_instance ** out);
DX_API dx_status dx_instance_format(const dx_instance *, char ** out);
DX_API size_t dx_instance_size(const dx_instance *);
DX_API size_t dx_instance_null_count(const dx_instance *);
DX_API void dx_instance_free(dx_instance *);

/* queries are over the target schema */
DX_API dx_status dx_query_parse(const dx_mapping *, const char * text, const char * origin, dx_query ** out);
DX_API dx_status dx_query_load(const dx_mapping *, const char * path, dx_query ** out);
DX_API dx_status dx_query_format(const dx_query *, char ** out);
DX_API void dx_query_free(dx_query *);

DX_API dx_status dx_chase(const dx_mapping *, const dx_instance * source, dx_instance ** out);
DX_API dx_status dx_core_solution(const dx_mapping *, const dx_instance * source, dx_instance ** out);
DX_API dx_status dx_core_of(const dx_instance *, dx_instance ** out);
DX_API dx_status dx_is_solution(const dx_mapping *, const dx_instance * source, const dx_instance * target, int * out);

/* JSON reports */
DX_API dx_status dx_blocks(const dx_instance *, char ** json_out);
/* constants: comma-separated names, may be NULL; block_size 0 means the
 * largest block of the instance */
DX_API dx_status dx_minrep(const dx_instance *, const char * constants, int per_block, size_t block_size,
        size_t null_cap, char ** json_out);
DX_API dx_status dx_eval(const dx_mapping *, const dx_instance * source, const dx_query *, const dx_eval_options *,
        char ** json_out);
/* fast path vs. general evaluator vs. oracle under gcwa-star */
DX_API dx_status dx_compare(const dx_mapping *, const dx_instance * source, const dx_query *, const dx_eval_options *,
        int * agree, char ** json_out);

/* the index-th triple drawn from a seeded generator of packed st-tgd
 * mappings, sources and universal queries, as text */
DX_API dx_status dx_random_triple(uint32_t seed, size_t index, char ** mapping_text, char ** source_text,
        char ** query_text);

#ifdef __cplusplus
}
#endif

#endif
