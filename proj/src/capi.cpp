#include "riskmdp/riskmdp.h"

#include "riskmdp/errors.hpp"
#include "riskmdp/mdp.hpp"
#include "riskmdp/solvers.hpp"

#include <algorithm>
#include <cstring>
#include <exception>
#include <sstream>
#include <string>

struct rmdp_mdp {
    riskmdp::Mdp impl;
};

struct rmdp_report {
    riskmdp::SolveReport impl;
};

namespace {

thread_local std::string t_last_error;

rmdp_status fail(rmdp_status status, std::string message) {
    t_last_error = std::move(message);
    return status;
}

template <typename Fn>
rmdp_status guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const std::invalid_argument& e) {
        return fail(RMDP_ERR_INVALID_ARGUMENT, e.what());
    } catch (const riskmdp::ParseError& e) {
        return fail(RMDP_ERR_PARSE, e.what());
    } catch (const riskmdp::ValidationError& e) {
        return fail(RMDP_ERR_VALIDATION, e.what());
    } catch (const riskmdp::IoError& e) {
        return fail(RMDP_ERR_IO, e.what());
    } catch (const riskmdp::SolverError& e) {
        return fail(RMDP_ERR_SOLVER, e.what());
    } catch (const std::exception& e) {
        return fail(RMDP_ERR_INTERNAL, e.what());
    }
}

template <typename T>
int64_t copy_out(const std::vector<T>& src, T* buf, int64_t cap) {
    if (buf != nullptr && cap > 0) {
        const auto count = std::min<int64_t>(cap, static_cast<int64_t>(src.size()));
        std::copy_n(src.begin(), count, buf);
    }
    return static_cast<int64_t>(src.size());
}

} // namespace

extern "C" {

const char* rmdp_version(void) { return "0.1.0"; }

const char* rmdp_last_error(void) { return t_last_error.c_str(); }

void rmdp_solve_options_init(rmdp_solve_options* opts) {
    if (opts == nullptr)
        return;
    opts->algorithm = RMDP_ALGO_VI;
    opts->zeta = 1.0;
    opts->tol = 1e-6;
    opts->inner_tol = 1e-6;
    opts->max_outer = 100000;
    opts->max_inner = 10000;
    opts->opi_sweeps = 20;
}

rmdp_status rmdp_mdp_random(int64_t n, int64_t m, double gamma, uint64_t seed,
                            rmdp_mdp** out) {
    if (out == nullptr)
        return fail(RMDP_ERR_INVALID_ARGUMENT, "output handle is NULL");
    *out = nullptr;
    return guarded([&] {
        auto handle = new rmdp_mdp{riskmdp::random_mdp(
            static_cast<int>(n), static_cast<int>(m), gamma, seed)};
        *out = handle;
        return RMDP_OK;
    });
}

rmdp_status rmdp_mdp_load_file(const char* path, rmdp_mdp** out) {
    if (path == nullptr || out == nullptr)
        return fail(RMDP_ERR_INVALID_ARGUMENT, "path or output handle is NULL");
    *out = nullptr;
    return guarded([&] {
        auto handle = new rmdp_mdp{riskmdp::load_mdp_file(path)};
        *out = handle;
        return RMDP_OK;
    });
}

rmdp_status rmdp_mdp_save_file(const rmdp_mdp* mdp, const char* path) {
    if (mdp == nullptr || path == nullptr)
        return fail(RMDP_ERR_INVALID_ARGUMENT, "mdp handle or path is NULL");
    return guarded([&] {
        riskmdp::save_mdp_file(mdp->impl, path);
        return RMDP_OK;
    });
}

rmdp_status rmdp_mdp_validate(const rmdp_mdp* mdp) {
    if (mdp == nullptr)
        return fail(RMDP_ERR_INVALID_ARGUMENT, "mdp handle is NULL");
    const riskmdp::ValidationReport rep = riskmdp::validate_mdp(mdp->impl);
    if (rep.ok())
        return RMDP_OK;
    std::ostringstream msg;
    for (std::size_t i = 0; i < rep.violations.size(); ++i)
        msg << (i > 0 ? "; " : "") << rep.violations[i];
    return fail(RMDP_ERR_VALIDATION, msg.str());
}

int64_t rmdp_mdp_num_states(const rmdp_mdp* mdp) { return mdp ? mdp->impl.n : 0; }

int64_t rmdp_mdp_num_actions(const rmdp_mdp* mdp) { return mdp ? mdp->impl.m : 0; }

double rmdp_mdp_discount(const rmdp_mdp* mdp) { return mdp ? mdp->impl.gamma : 0.0; }

void rmdp_mdp_free(rmdp_mdp* mdp) { delete mdp; }

rmdp_status rmdp_solve(const rmdp_mdp* mdp, const rmdp_solve_options* opts,
                       rmdp_report** out) {
    if (mdp == nullptr || opts == nullptr || out == nullptr)
        return fail(RMDP_ERR_INVALID_ARGUMENT, "mdp, options or output handle is NULL");
    *out = nullptr;
    return guarded([&] {
        riskmdp::Algorithm algo;
        switch (opts->algorithm) {
        case RMDP_ALGO_VI:
            algo = riskmdp::Algorithm::vi;
            break;
        case RMDP_ALGO_SNM1:
            algo = riskmdp::Algorithm::snm1;
            break;
        case RMDP_ALGO_SNM2:
            algo = riskmdp::Algorithm::snm2;
            break;
        case RMDP_ALGO_SNM2_WARM:
            algo = riskmdp::Algorithm::snm2_warm;
            break;
        case RMDP_ALGO_SNM3:
            algo = riskmdp::Algorithm::snm3;
            break;
        case RMDP_ALGO_OPI:
            algo = riskmdp::Algorithm::opi;
            break;
        default:
            return fail(RMDP_ERR_INVALID_ARGUMENT, "unknown algorithm identifier");
        }

        riskmdp::SolverConfig cfg;
        cfg.tol = opts->tol;
        cfg.inner_tol = opts->inner_tol;
        cfg.max_outer = static_cast<int>(opts->max_outer);
        cfg.max_inner = static_cast<int>(opts->max_inner);
        cfg.opi_sweeps = {static_cast<int>(opts->opi_sweeps)};

        const riskmdp::RiskMeasure measure = riskmdp::RiskMeasure::cvar(opts->zeta);
        auto handle = new rmdp_report{riskmdp::solve(algo, mdp->impl, measure, cfg)};
        *out = handle;
        return RMDP_OK;
    });
}

int64_t rmdp_report_outer_iters(const rmdp_report* rep) {
    return rep ? rep->impl.outer_iters : 0;
}

int64_t rmdp_report_inner_iters(const rmdp_report* rep) {
    return rep ? rep->impl.inner_iters_total : 0;
}

int64_t rmdp_report_inner_failures(const rmdp_report* rep) {
    return rep ? rep->impl.inner_failures : 0;
}

uint64_t rmdp_report_lp_evals(const rmdp_report* rep) {
    return rep ? rep->impl.lp_evals : 0;
}

double rmdp_report_final_residual(const rmdp_report* rep) {
    if (rep == nullptr || rep->impl.residual_history.empty())
        return 0.0;
    return rep->impl.residual_history.back();
}

double rmdp_report_wall_seconds(const rmdp_report* rep) {
    return rep ? rep->impl.wall_time_seconds : 0.0;
}

int rmdp_report_converged(const rmdp_report* rep) {
    return (rep != nullptr && rep->impl.converged) ? 1 : 0;
}

int64_t rmdp_report_residual_history(const rmdp_report* rep, double* buf, int64_t cap) {
    if (rep == nullptr)
        return 0;
    return copy_out(rep->impl.residual_history, buf, cap);
}

int64_t rmdp_report_value(const rmdp_report* rep, double* buf, int64_t cap) {
    if (rep == nullptr)
        return 0;
    return copy_out(rep->impl.v_final, buf, cap);
}

int64_t rmdp_report_policy(const rmdp_report* rep, int64_t* buf, int64_t cap) {
    if (rep == nullptr)
        return 0;
    if (buf != nullptr && cap > 0) {
        const auto count = std::min<int64_t>(
            cap, static_cast<int64_t>(rep->impl.policy_final.size()));
        for (int64_t i = 0; i < count; ++i)
            buf[i] = rep->impl.policy_final[static_cast<std::size_t>(i)];
    }
    return static_cast<int64_t>(rep->impl.policy_final.size());
}

void rmdp_report_free(rmdp_report* rep) { delete rep; }

} // extern "C"
