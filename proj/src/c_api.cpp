#include "asymlab/asymlab.h"

#include <cmath>
#include <cstdio>
#include <exception>
#include <memory>
#include <new>
#include <string>

#include "asymlab/inner_fold.hpp"
#include "asymlab/inner_weakshock.hpp"
#include "asymlab/scenario.hpp"

using namespace asymlab;

struct asymlab_scenario {
    ScenarioConfig config;
    std::string scratch;
};

struct asymlab_report {
    SweepReport report;
    std::string json;
};

struct asymlab_verify {
    std::vector<VerifyCheck> checks;
};

struct asymlab_flux {
    FluxFunction flux;
};

namespace {

thread_local std::string last_error;

template <class F>
int guarded(F&& f)
{
    try {
        last_error.clear();
        f();
        return ASYMLAB_OK;
    } catch (const Error& e) {
        last_error = e.what();
        return static_cast<int>(e.code());
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
        return ASYMLAB_ERR_INTERNAL;
    } catch (const std::exception& e) {
        last_error = e.what();
        return ASYMLAB_ERR_INTERNAL;
    }
}

void need(const void* p, const char* what)
{
    if (!p)
        throw Error(ErrorCode::invalid_argument, std::string(what) + " is null");
}

std::string cell(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

extern "C" {

const char* asymlab_version(void) { return "1.0.0"; }

const char* asymlab_last_error(void) { return last_error.c_str(); }

const char* asymlab_status_name(int status)
{
    if (status == ASYMLAB_ERR_INTERNAL)
        return "Internal";
    if (status < 0 || status > ASYMLAB_ERR_IO)
        return "Unknown";
    return error_name(static_cast<ErrorCode>(status));
}

int asymlab_scenario_parse(const char* text, asymlab_scenario** out)
{
    return guarded([&] {
        need(text, "text");
        need(out, "out");
        *out = nullptr;
        auto s = std::make_unique<asymlab_scenario>();
        s->config = parse_config_text(text);
        *out = s.release();
    });
}

int asymlab_scenario_load(const char* path, asymlab_scenario** out)
{
    return guarded([&] {
        need(path, "path");
        need(out, "out");
        *out = nullptr;
        auto s = std::make_unique<asymlab_scenario>();
        s->config = parse_config_file(path);
        *out = s.release();
    });
}

void asymlab_scenario_free(asymlab_scenario* s) { delete s; }

int asymlab_scenario_set_out_dir(asymlab_scenario* s, const char* dir)
{
    return guarded([&] {
        need(s, "scenario");
        need(dir, "dir");
        s->config.out_dir = dir;
    });
}

int asymlab_scenario_leg_count(const asymlab_scenario* s, size_t* out)
{
    return guarded([&] {
        need(s, "scenario");
        need(out, "out");
        *out = s->config.parameters().size();
    });
}

int asymlab_scenario_parameter(const asymlab_scenario* s, size_t leg, double* out)
{
    return guarded([&] {
        need(s, "scenario");
        need(out, "out");
        const auto p = s->config.parameters();
        if (leg >= p.size())
            throw Error(ErrorCode::invalid_argument, "leg index out of range");
        *out = p[leg];
    });
}

int asymlab_scenario_resolved_json(asymlab_scenario* s, const char** out)
{
    return guarded([&] {
        need(s, "scenario");
        need(out, "out");
        s->scratch = resolved_config_json(s->config);
        *out = s->scratch.c_str();
    });
}

int asymlab_scenario_field_csv(asymlab_scenario* s, size_t leg, int part, const char** out)
{
    return guarded([&] {
        need(s, "scenario");
        need(out, "out");
        if (part < ASYMLAB_FIELD_REFERENCE || part > ASYMLAB_FIELD_BOTH)
            throw Error(ErrorCode::invalid_argument, "field part must be reference, asymptotic or both");
        if (leg >= s->config.parameters().size())
            throw Error(ErrorCode::invalid_argument, "leg index out of range");
        const bool ref = part & ASYMLAB_FIELD_REFERENCE;
        const bool asy = part & ASYMLAB_FIELD_ASYMPTOTIC;
        const auto r = evaluate_leg(s->config, leg, ref, asy);
        if (ref && asy) {
            s->scratch = field_csv(r.rows);
        } else {
            s->scratch = ref ? "inner_x,inner_t,u_reference\n" : "inner_x,inner_t,u_asymptotic\n";
            for (const auto& row : r.rows)
                s->scratch += cell(row.inner_x) + "," + cell(row.inner_t) + "," +
                              cell(ref ? row.u_reference : row.u_asymptotic) + "\n";
        }
        *out = s->scratch.c_str();
    });
}

int asymlab_scenario_limit_csv(asymlab_scenario* s, int characteristics, int samples, const char** out)
{
    return guarded([&] {
        need(s, "scenario");
        need(out, "out");
        s->scratch = limit_curves_csv(s->config, characteristics, samples);
        *out = s->scratch.c_str();
    });
}

int asymlab_scenario_run(const asymlab_scenario* s, asymlab_report** out)
{
    return guarded([&] {
        need(s, "scenario");
        need(out, "out");
        *out = nullptr;
        auto r = std::make_unique<asymlab_report>();
        r->report = run_scenario(s->config);
        r->json = r->report.json();
        *out = r.release();
    });
}

void asymlab_report_free(asymlab_report* r) { delete r; }

int asymlab_report_json(const asymlab_report* r, const char** out)
{
    return guarded([&] {
        need(r, "report");
        need(out, "out");
        *out = r->json.c_str();
    });
}

int asymlab_report_pass(const asymlab_report* r, int* pass)
{
    return guarded([&] {
        need(r, "report");
        need(pass, "pass");
        *pass = r->report.pass ? 1 : 0;
    });
}

int asymlab_report_slope(const asymlab_report* r, double* slope, double* residual, int* degenerate)
{
    return guarded([&] {
        need(r, "report");
        if (slope)
            *slope = r->report.degenerate ? std::nan("") : r->report.slope;
        if (residual)
            *residual = r->report.degenerate ? std::nan("") : r->report.residual;
        if (degenerate)
            *degenerate = r->report.degenerate ? 1 : 0;
    });
}

int asymlab_report_write(const asymlab_report* r)
{
    return guarded([&] {
        need(r, "report");
        write_report(r->report);
    });
}

int asymlab_verify_run(asymlab_verify** out)
{
    return guarded([&] {
        need(out, "out");
        *out = nullptr;
        auto v = std::make_unique<asymlab_verify>();
        v->checks = run_verify_suite();
        *out = v.release();
    });
}

void asymlab_verify_free(asymlab_verify* v) { delete v; }

size_t asymlab_verify_count(const asymlab_verify* v) { return v ? v->checks.size() : 0; }

int asymlab_verify_check(const asymlab_verify* v, size_t i, const char** name, int* passed, const char** detail,
                         double* runtime_s)
{
    return guarded([&] {
        need(v, "verify");
        if (i >= v->checks.size())
            throw Error(ErrorCode::invalid_argument, "check index out of range");
        const auto& c = v->checks[i];
        if (name)
            *name = c.name.c_str();
        if (passed)
            *passed = c.passed ? 1 : 0;
        if (detail)
            *detail = c.detail.c_str();
        if (runtime_s)
            *runtime_s = c.runtime_s;
    });
}

int asymlab_fit_rate(const double* params, const double* errors, size_t n, double* slope, double* residual)
{
    return guarded([&] {
        need(params, "params");
        need(errors, "errors");
        const auto fit = fit_rate({params, params + n}, {errors, errors + n});
        if (slope)
            *slope = fit.slope;
        if (residual)
            *residual = fit.residual;
    });
}

int asymlab_flux_create(const char* kind, const double* coefficients, size_t n, double exp_amplitude,
                        double exp_rate, double lo, double hi, asymlab_flux** out)
{
    return guarded([&] {
        need(kind, "kind");
        need(out, "out");
        *out = nullptr;
        FluxSpec spec;
        const std::string k = kind;
        if (k == "burgers")
            spec.kind = FluxKind::burgers;
        else if (k == "polynomial")
            spec.kind = FluxKind::polynomial;
        else if (k == "composed-analytic")
            spec.kind = FluxKind::composed_analytic;
        else
            throw Error(ErrorCode::invalid_argument, "unknown flux kind " + k);
        if (n > 0) {
            need(coefficients, "coefficients");
            spec.coefficients.assign(coefficients, coefficients + n);
        }
        spec.exp_amplitude = exp_amplitude;
        spec.exp_rate = exp_rate;
        spec.interval_lo = lo;
        spec.interval_hi = hi;
        auto f = std::make_unique<asymlab_flux>();
        f->flux = make_flux(spec);
        *out = f.release();
    });
}

void asymlab_flux_free(asymlab_flux* f) { delete f; }

int asymlab_flux_derivative(const asymlab_flux* f, double u, int order, double* out)
{
    return guarded([&] {
        need(f, "flux");
        need(out, "out");
        *out = f->flux.derivative(u, order);
    });
}

int asymlab_fold_w10(double xi, double tau, double phi2_at_0, double* out)
{
    return guarded([&] {
        need(out, "out");
        *out = w10(xi, tau, phi2_at_0);
    });
}

int asymlab_weakshock_w20(double xi, double tau, double b, double* out)
{
    return guarded([&] {
        need(out, "out");
        *out = w20(xi, tau, b);
    });
}

int asymlab_weakshock_w30(double xi, double tau, double b, double* out)
{
    return guarded([&] {
        need(out, "out");
        *out = w30(xi, tau, b);
    });
}

} // extern "C"
