#include "cvpoly/cvpoly.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <string>

#include "cvpoly/analysis.hpp"
#include "cvpoly/oracle.hpp"

struct cvp_state {
    cvpoly::WaveFunction wf;
};

struct cvp_plan {
    cvpoly::MonomialPlan plan;
    double residual;
};

namespace {

using namespace cvpoly;

thread_local std::string g_last_error;

template <typename Fn>
cvp_status guard(Fn &&fn) noexcept {
    try {
        fn();
        g_last_error.clear();
        return CVP_OK;
    } catch (const Error &e) {
        g_last_error = e.what();
        return static_cast<cvp_status>(static_cast<int>(e.code()));
    } catch (const std::exception &e) {
        g_last_error = std::string("internal: ") + e.what();
        return CVP_INTERNAL;
    } catch (...) {
        g_last_error = "internal: unknown exception";
        return CVP_INTERNAL;
    }
}

void require(bool ok, const char *what) {
    if (!ok) {
        throw Error(ErrorCode::InvalidArgument, what);
    }
}

Grid to_grid(const cvp_grid *g) {
    require(g != nullptr, "null grid");
    return Grid::make(g->q_min, g->q_max, g->n_points);
}

cvp_grid from_grid(const Grid &g) {
    return cvp_grid{g.q_min, g.q_max, g.n_points};
}

SqueezedParams to_ancilla(const cvp_ancilla *a) {
    require(a != nullptr, "null ancilla");
    SqueezedParams p = SqueezedParams::from_quadratures(a->q0, a->p0, a->k);
    p.validate();
    return p;
}

cvp_ancilla from_ancilla(const SqueezedParams &p) {
    return cvp_ancilla{p.q0(), p.p0(), p.k};
}

const WaveFunction &wf(const cvp_state *s) {
    require(s != nullptr, "null state");
    return s->wf;
}

const MonomialPlan &plan_of(const cvp_plan *p) {
    require(p != nullptr, "null plan");
    return p->plan;
}

void emit(cvp_state **out, WaveFunction w) {
    require(out != nullptr, "null output handle");
    *out = new cvp_state{std::move(w)};
}

SqueezingAxis to_axis(cvp_axis a) {
    require(a == CVP_ANTI_SQUEEZED_Q || a == CVP_SQUEEZED_Q, "unknown squeezing axis");
    return a == CVP_ANTI_SQUEEZED_Q ? SqueezingAxis::AntiSqueezedQ : SqueezingAxis::SqueezedQ;
}

InputFamily to_family(cvp_family f) {
    require(f == CVP_FAMILY_FOCK || f == CVP_FAMILY_COHERENT, "unknown input family");
    return f == CVP_FAMILY_FOCK ? InputFamily::Fock : InputFamily::Coherent;
}

std::vector<double> outcomes_or_zero(const MonomialPlan &plan, const double *outcomes) {
    if (outcomes == nullptr) {
        return std::vector<double>(plan.roots.size(), 0.0);
    }
    return std::vector<double>(outcomes, outcomes + plan.roots.size());
}

Method1Config method1_config(const MonomialPlan &plan, double db, double delta, int nodes, const double *outcomes) {
    Method1Config cfg = Method1Config::centered(plan, db, delta, nodes);
    cfg.nominal_outcomes = outcomes_or_zero(plan, outcomes);
    cfg.validate();
    return cfg;
}

void store_sweep(const std::vector<SweepPoint> &pts, cvp_sweep_point *out) {
    for (std::size_t i = 0; i < pts.size(); ++i) {
        out[i].x = pts[i].x;
        out[i].fidelity = pts[i].fidelity;
        out[i].success_prob = pts[i].success_prob.value_or(std::numeric_limits<double>::quiet_NaN());
    }
}

std::vector<double> sweep_xs(const double *xs, std::size_t n, cvp_sweep_point *out) {
    require(xs != nullptr && out != nullptr, "null sweep buffers");
    return std::vector<double>(xs, xs + n);
}

OracleGrid oracle_grids(const cvp_grid *g) {
    OracleGrid og;
    if (g != nullptr) {
        og.grid1 = to_grid(g);
        og.grid2 = og.grid1;
    }
    og.validate();
    return og;
}

}  // namespace

extern "C" {

const char *cvp_version(void) {
    return CVPOLY_VERSION_STRING;
}

const char *cvp_last_error(void) {
    return g_last_error.c_str();
}

const char *cvp_status_name(cvp_status status) {
    switch (status) {
        case CVP_OK:
            return "Ok";
        case CVP_INTERNAL:
            return "Internal";
        default:
            if (status >= CVP_INVALID_ARGUMENT && status <= CVP_EMPTY_ENSEMBLE) {
                return error_code_name(static_cast<ErrorCode>(static_cast<int>(status)));
            }
            return "Unknown";
    }
}

int cvp_status_is_numerical(cvp_status status) {
    if (status >= CVP_INVALID_ARGUMENT && status <= CVP_EMPTY_ENSEMBLE) {
        return is_numerical_failure(static_cast<ErrorCode>(static_cast<int>(status))) ? 1 : 0;
    }
    return 0;
}

cvp_grid cvp_default_grid(void) {
    return from_grid(Grid::standard());
}

cvp_grid cvp_oracle_grid(void) {
    return from_grid(OracleGrid::standard().grid1);
}

cvp_status cvp_db_to_k(double db, cvp_axis axis, double *k) {
    return guard([&] {
        require(k != nullptr, "null output");
        *k = db_to_k(db, to_axis(axis));
    });
}

cvp_status cvp_state_fock(unsigned n, const cvp_grid *grid, cvp_state **out) {
    return guard([&] { emit(out, make_fock(n, to_grid(grid))); });
}

cvp_status cvp_state_coherent(double alpha_re, double alpha_im, const cvp_grid *grid, cvp_state **out) {
    return guard([&] { emit(out, make_coherent(cplx(alpha_re, alpha_im), to_grid(grid))); });
}

cvp_status cvp_state_squeezed(const cvp_ancilla *params, const cvp_grid *grid, cvp_state **out) {
    return guard([&] { emit(out, make_squeezed(to_ancilla(params), to_grid(grid))); });
}

cvp_status cvp_state_family(cvp_family family, double x, const cvp_grid *grid, cvp_state **out) {
    return guard([&] { emit(out, make_family_input(to_family(family), x, to_grid(grid))); });
}

cvp_status cvp_state_momentum_squeezed(double db, const cvp_grid *grid, cvp_state **out) {
    return guard([&] { emit(out, momentum_squeezed_input(db, to_grid(grid))); });
}

cvp_status cvp_state_from_amplitudes(const cvp_grid *grid, const double *re_im, size_t n_points, cvp_state **out) {
    return guard([&] {
        require(re_im != nullptr, "null amplitudes");
        std::vector<cplx> amps(n_points);
        for (std::size_t i = 0; i < n_points; ++i) {
            amps[i] = cplx(re_im[2 * i], re_im[2 * i + 1]);
        }
        emit(out, WaveFunction(to_grid(grid), std::move(amps)));
    });
}

void cvp_state_free(cvp_state *state) {
    delete state;
}

size_t cvp_state_size(const cvp_state *state) {
    return state == nullptr ? 0 : state->wf.size();
}

cvp_status cvp_state_grid(const cvp_state *state, cvp_grid *grid) {
    return guard([&] {
        require(grid != nullptr, "null output");
        *grid = from_grid(wf(state).grid());
    });
}

cvp_status cvp_state_amplitudes(const cvp_state *state, double *re_im, size_t n_points) {
    return guard([&] {
        const WaveFunction &w = wf(state);
        require(re_im != nullptr && n_points == w.size(), "amplitude buffer does not match the state size");
        for (std::size_t i = 0; i < n_points; ++i) {
            re_im[2 * i] = w[i].real();
            re_im[2 * i + 1] = w[i].imag();
        }
    });
}

cvp_status cvp_state_norm2(const cvp_state *state, double *norm2) {
    return guard([&] {
        require(norm2 != nullptr, "null output");
        *norm2 = wf(state).squared_norm();
    });
}

cvp_status cvp_fidelity(const cvp_state *a, const cvp_state *b, double *fidelity) {
    return guard([&] {
        require(fidelity != nullptr, "null output");
        *fidelity = fidelity_pure(wf(a), wf(b));
    });
}

cvp_status cvp_apply_cubic(const cvp_state *psi, double nu, cvp_state **out) {
    return guard([&] { emit(out, apply_unitary(DiagonalUnitary::cubic_phase(nu), wf(psi))); });
}

cvp_status cvp_plan_cubic(double nu, int order, cvp_plan **out) {
    return guard([&] {
        require(out != nullptr, "null output handle");
        const DiagonalUnitary u = DiagonalUnitary::cubic_phase(nu);
        MonomialPlan plan = taylor_factorize(u, order);
        const double residual = reconstruction_residual(plan, taylor_coefficients(u, order));
        *out = new cvp_plan{std::move(plan), residual};
    });
}

void cvp_plan_free(cvp_plan *plan) {
    delete plan;
}

size_t cvp_plan_degree(const cvp_plan *plan) {
    return plan == nullptr ? 0 : plan->plan.roots.size();
}

cvp_status cvp_plan_root(const cvp_plan *plan, size_t i, double *re, double *im) {
    return guard([&] {
        const MonomialPlan &p = plan_of(plan);
        require(i < p.roots.size() && re != nullptr && im != nullptr, "root index out of range");
        *re = p.roots[i].real();
        *im = p.roots[i].imag();
    });
}

cvp_status cvp_plan_residual(const cvp_plan *plan, double *residual) {
    return guard([&] {
        plan_of(plan);
        require(residual != nullptr, "null output");
        *residual = plan->residual;
    });
}

cvp_status cvp_apply_plan(const cvp_plan *plan, const cvp_state *psi, cvp_state **out) {
    return guard([&] { emit(out, apply_plan(plan_of(plan), wf(psi))); });
}

cvp_status cvp_gate_profile(const cvp_plan *plan, double nu, double q, double out[4]) {
    return guard([&] {
        require(out != nullptr, "null output");
        const cplx u = DiagonalUnitary::cubic_phase(nu)(q);
        const cplx p = plan_of(plan)(q);
        out[0] = u.real();
        out[1] = u.imag();
        out[2] = p.real();
        out[3] = p.imag();
    });
}

cvp_status cvp_bare_fidelity(double nu, const cvp_state *psi, double *fidelity) {
    return guard([&] {
        require(fidelity != nullptr, "null output");
        if (nu == 0.0) {
            *fidelity = 1.0;
            return;
        }
        const DiagonalUnitary u = DiagonalUnitary::cubic_phase(nu);
        *fidelity = bare_polynomial_fidelity(u, taylor_factorize(u, 1), wf(psi));
    });
}

cvp_status cvp_method1_exact(const cvp_plan *plan, const cvp_state *psi, double db, const double *outcomes,
                             cvp_state **out) {
    return guard([&] {
        const Method1Config cfg = method1_config(plan_of(plan), db, 0.1, 8, outcomes);
        emit(out, chain_method1_exact(wf(psi), cfg));
    });
}

cvp_status cvp_method1_postselect(const cvp_plan *plan, const cvp_state *psi, double db, double delta, int nodes,
                                  const double *outcomes, const cvp_state *target, double *fidelity,
                                  double *region_prob) {
    return guard([&] {
        require(fidelity != nullptr && region_prob != nullptr, "null output");
        const Method1Config cfg = method1_config(plan_of(plan), db, delta, nodes, outcomes);
        const OutcomeEnsemble ens = postselect_ensemble(wf(psi), cfg);
        *region_prob = ens.region_prob;
        *fidelity = fidelity_postselected(ens, normalize(wf(target)).state);
    });
}

cvp_status cvp_method1_optimize(const cvp_plan *plan, const cvp_state *psi, double db, double delta, int nodes,
                                double q0_lo, double q0_hi, size_t q0_count, double *outcomes_out,
                                size_t n_outcomes) {
    return guard([&] {
        const MonomialPlan &p = plan_of(plan);
        require(outcomes_out != nullptr && n_outcomes == p.roots.size(), "outcome buffer must hold one per root");
        const Method1Config cfg =
            optimize_state_prep(wf(psi), p, db, delta, ScanRange{q0_lo, q0_hi, q0_count}, nodes);
        for (std::size_t i = 0; i < n_outcomes; ++i) {
            outcomes_out[i] = cfg.nominal_outcomes[i];
        }
    });
}

cvp_status cvp_ancilla_method1(double lambda_re, double lambda_im, double k, double m, cvp_ancilla *out) {
    return guard([&] {
        require(out != nullptr, "null output");
        *out = from_ancilla(solve_ancilla_method1(cplx(lambda_re, lambda_im), k, m));
    });
}

cvp_status cvp_homodyne_pdf(const cvp_state *psi, const cvp_ancilla *ancilla, double m, double *density) {
    return guard([&] {
        require(density != nullptr, "null output");
        *density = HomodyneDensity(wf(psi), to_ancilla(ancilla))(m);
    });
}

cvp_status cvp_gaussian_moment_pdf(cvp_family family, double x, double y, const cvp_ancilla *ancilla, double m,
                                   double *density) {
    return guard([&] {
        require(density != nullptr, "null output");
        AnalyticInput input = CoherentInput{cplx(x, y)};
        if (to_family(family) == InputFamily::Fock) {
            require(x >= 0.0 && std::round(x) == x && y == 0.0, "Fock input needs a non-negative integer");
            input = FockInput{static_cast<unsigned>(x)};
        }
        *density = gaussian_moment_pdf(input, to_ancilla(ancilla), m);
    });
}

cvp_status cvp_method2_chain(const cvp_plan *plan, const cvp_state *psi, double db, cvp_axis axis, cvp_state **out,
                             double *success_prob, double *step_probs, size_t n_steps) {
    return guard([&] {
        require(success_prob != nullptr, "null output");
        Method2Config cfg;
        cfg.plan = plan_of(plan);
        cfg.squeezing_db = db;
        cfg.convention = to_axis(axis);
        Method2Result res = chain_method2(wf(psi), cfg);
        if (step_probs != nullptr) {
            require(n_steps == res.step_probs.size(), "step buffer must hold one slot per root");
            for (std::size_t i = 0; i < n_steps; ++i) {
                step_probs[i] = res.step_probs[i];
            }
        }
        *success_prob = res.success_prob;
        emit(out, std::move(res.state));
    });
}

cvp_status cvp_ancilla_method2(double lambda_re, double lambda_im, double k, cvp_ancilla *out) {
    return guard([&] {
        require(out != nullptr, "null output");
        *out = from_ancilla(solve_ancilla_method2(cplx(lambda_re, lambda_im), k));
    });
}

cvp_status cvp_spc_probability(const cvp_state *psi, const cvp_ancilla *ancilla, unsigned n, double *prob) {
    return guard([&] {
        require(prob != nullptr, "null output");
        *prob = spc_probability(wf(psi), to_ancilla(ancilla), n);
    });
}

cvp_status cvp_wigner(const cvp_state *psi, double q_lo, double q_hi, size_t q_count, double p_lo, double p_hi,
                      size_t p_count, double *values, double *q_axis, cvp_wigner_summary *summary) {
    return guard([&] {
        require(values != nullptr && summary != nullptr, "null output");
        const WignerGrid w = wigner(wf(psi), AxisSpec{q_lo, q_hi, q_count}, AxisSpec{p_lo, p_hi, p_count});
        std::copy(w.values.begin(), w.values.end(), values);
        if (q_axis != nullptr) {
            std::copy(w.q_axis.begin(), w.q_axis.end(), q_axis);
        }
        summary->min_value = w.min_value;
        summary->max_value = w.max_value;
        summary->integral = w.integral;
        summary->negative_regions = count_negative_regions(w);
    });
}

cvp_status cvp_sweep_bare(cvp_family family, const double *xs, size_t n, double nu, const cvp_grid *grid,
                          unsigned jobs, cvp_sweep_point *out) {
    return guard([&] { store_sweep(sweep_bare(to_family(family), sweep_xs(xs, n, out), nu, to_grid(grid), jobs), out); });
}

cvp_status cvp_sweep_method1_exact(cvp_family family, const double *xs, size_t n, double nu, double db,
                                   const cvp_grid *grid, unsigned jobs, cvp_sweep_point *out) {
    return guard([&] {
        store_sweep(sweep_method1_exact(to_family(family), sweep_xs(xs, n, out), nu, db, to_grid(grid), jobs), out);
    });
}

cvp_status cvp_sweep_method1_postselect(cvp_family family, const double *xs, size_t n, double nu, double db,
                                        double delta, int nodes, const cvp_grid *grid, unsigned jobs,
                                        cvp_sweep_point *out) {
    return guard([&] {
        store_sweep(sweep_method1_postselect(to_family(family), sweep_xs(xs, n, out), nu, db, delta, nodes,
                                             to_grid(grid), jobs),
                    out);
    });
}

cvp_status cvp_sweep_method2(cvp_family family, const double *xs, size_t n, double nu, double db, cvp_axis axis,
                             const cvp_grid *grid, unsigned jobs, cvp_sweep_point *out) {
    return guard([&] {
        store_sweep(
            sweep_method2(to_family(family), sweep_xs(xs, n, out), nu, db, to_axis(axis), to_grid(grid), jobs), out);
    });
}

cvp_status cvp_oracle_method1(const cvp_state *psi, const cvp_ancilla *ancilla, double m, const cvp_grid *oracle_grid,
                              cvp_oracle_check *out) {
    return guard([&] {
        require(out != nullptr, "null output");
        const OracleGrid og = oracle_grids(oracle_grid);
        const SqueezedParams anc = to_ancilla(ancilla);
        const Normalized orc = oracle_step_method1(wf(psi), anc, m, og);
        const Method1Step closed = step_method1(normalize(wf(psi)).state, anc, m);
        out->deficit = 1.0 - fidelity_pure(orc.state, closed.state);
        out->weight_oracle = orc.weight;
        out->weight_closed = HomodyneDensity(wf(psi), anc)(m);
    });
}

cvp_status cvp_oracle_method2(const cvp_state *psi, const cvp_ancilla *ancilla, const cvp_grid *oracle_grid,
                              cvp_oracle_check *out) {
    return guard([&] {
        require(out != nullptr, "null output");
        const OracleGrid og = oracle_grids(oracle_grid);
        const SqueezedParams anc = to_ancilla(ancilla);
        const Normalized orc = oracle_step_method2(wf(psi), anc, 1, og);
        const Method2Step closed = step_method2(normalize(wf(psi)).state, anc);
        out->deficit = 1.0 - fidelity_pure(orc.state, closed.state);
        out->weight_oracle = orc.weight;
        out->weight_closed = closed.p_single;
    });
}

cvp_status cvp_oracle_spc_probability(const cvp_state *psi, const cvp_ancilla *ancilla, unsigned n,
                                      const cvp_grid *oracle_grid, double *prob) {
    return guard([&] {
        require(prob != nullptr, "null output");
        const OracleGrid og = oracle_grids(oracle_grid);
        const WaveFunction sigma = make_squeezed(to_ancilla(ancilla), og.grid2);
        const TwoModeState joint = cz_apply(TwoModeState::product(normalize(wf(psi)).state, sigma));
        *prob = project_fock(joint, Mode::Second, n).weight;
    });
}

}  // extern "C"
