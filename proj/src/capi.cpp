#include "brstlab/brstlab.h"

#include "brstlab/reports.hpp"
#include "brstlab/suites.hpp"

#include <cstdlib>
#include <cstring>
#include <string>

struct brst_context {
    brst::Context ctx;
    std::string lieName;
};

namespace {

thread_local std::string last_error;

char* dup(const std::string& s)
{
    char* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (p)
        std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

std::string str_or(const char* s, const char* fallback = "") { return s ? std::string(s) : std::string(fallback); }

template <class F>
brst_status guarded(F&& f)
{
    last_error.clear();
    try {
        f();
        return BRST_OK;
    } catch (const brst::ParseError& e) {
        last_error = e.what();
        return BRST_ERR_PARSE;
    } catch (const brst::InversionError& e) {
        last_error = e.what();
        return BRST_ERR_INVERSION;
    } catch (const brst::DivisionError& e) {
        last_error = e.what();
        return BRST_ERR_DIVISION;
    } catch (const brst::ClosednessError& e) {
        last_error = e.what();
        return BRST_ERR_CLOSEDNESS;
    } catch (const brst::InvarianceError& e) {
        last_error = e.what();
        return BRST_ERR_INVARIANCE;
    } catch (const brst::ConfigError& e) {
        last_error = e.what();
        return BRST_ERR_CONFIG;
    } catch (const std::exception& e) {
        last_error = e.what();
        return BRST_ERR_INTERNAL;
    } catch (...) {
        last_error = "unknown error";
        return BRST_ERR_INTERNAL;
    }
}

brst_status null_arg(const char* what)
{
    last_error = std::string("null argument: ") + what;
    return BRST_ERR_CONFIG;
}

} // namespace

extern "C" {

brst_status brst_context_create(const char* lie, const char* backend, brst_context** out)
{
    if (!out)
        return null_arg("out");
    *out = nullptr;
    return guarded([&] {
        brst::Context c = brst::Context::from_specs(str_or(lie), str_or(backend, "torus"));
        std::string name = c.lie().name();
        *out = new brst_context{std::move(c), std::move(name)};
    });
}

void brst_context_destroy(brst_context* ctx) { delete ctx; }

const char* brst_context_lie_name(const brst_context* ctx) { return ctx ? ctx->lieName.c_str() : ""; }

brst_status brst_verify(const char* suite, const char* lie, const char* backend, int order, int samples,
                        uint64_t seed, int as_json, char** report, int* failures)
{
    if (!report)
        return null_arg("report");
    *report = nullptr;
    return guarded([&] {
        brst::SuiteConfig cfg;
        cfg.suite = str_or(suite, "all");
        cfg.lie = str_or(lie);
        cfg.backend = str_or(backend, "torus");
        cfg.order = order;
        cfg.samples = samples;
        cfg.seed = seed;
        brst::SuiteReport rep = brst::run_suite(cfg);
        *report = dup(as_json ? rep.json() : rep.text());
        if (failures)
            *failures = rep.failed();
    });
}

brst_status brst_eval(const brst_context* ctx, const char* expr, const char* rhs, const char* op, const char* kappa,
                      int order, char** result)
{
    if (!ctx)
        return null_arg("ctx");
    if (!expr)
        return null_arg("expr");
    if (!result)
        return null_arg("result");
    *result = nullptr;
    return guarded([&] {
        brst::Scalar k = kappa && *kappa ? brst::Scalar::parse(kappa) : brst::Scalar(0);
        *result = dup(brst::eval_expression(ctx->ctx, expr, str_or(op, "brst0"), order, str_or(rhs), k));
    });
}

brst_status brst_torus_report(const char* variant, int order, const char* emit, int max_degree, char** report,
                              int* failures)
{
    if (!report)
        return null_arg("report");
    *report = nullptr;
    return guarded([&] {
        brst::RunReport r =
            brst::torus_report(str_or(variant, "standard"), order, str_or(emit, "reduced-table"), max_degree);
        *report = dup(r.json);
        if (failures)
            *failures = r.failures;
    });
}

brst_status brst_reduce(const char* backend, int order, int max_degree, char** report, int* failures)
{
    if (!report)
        return null_arg("report");
    *report = nullptr;
    return guarded([&] {
        brst::RunReport r = brst::reduce_report(str_or(backend, "flat:2,1"), order, max_degree);
        *report = dup(r.json);
        if (failures)
            *failures = r.failures;
    });
}

void brst_string_free(char* s) { std::free(s); }

const char* brst_last_error(void) { return last_error.c_str(); }

const char* brst_status_name(brst_status status)
{
    switch (status) {
    case BRST_OK:
        return "ok";
    case BRST_ERR_CONFIG:
        return "config";
    case BRST_ERR_PARSE:
        return "parse";
    case BRST_ERR_INVERSION:
        return "inversion";
    case BRST_ERR_DIVISION:
        return "division";
    case BRST_ERR_CLOSEDNESS:
        return "closedness";
    case BRST_ERR_INVARIANCE:
        return "invariance";
    case BRST_ERR_INTERNAL:
        return "internal";
    }
    return "unknown";
}

} // extern "C"
