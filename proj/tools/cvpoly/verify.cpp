#include <algorithm>
#include <cmath>
#include <string>

#include "api.hpp"
#include "commands.hpp"

namespace cli {

namespace {

struct Report {
    nlohmann::json checks = nlohmann::json::array();
    bool ok = true;

    void add(const std::string &name, double residual, double tolerance) {
        const bool pass = std::isfinite(residual) && residual < tolerance;
        ok = ok && pass;
        checks.push_back({{"name", name}, {"residual", residual}, {"tolerance", tolerance}, {"pass", pass}});
    }
};

struct Input {
    const char *name;
    cvp_family family;
    double x;
};

constexpr Input kInputs[] = {{"vacuum", CVP_FAMILY_FOCK, 0.0},
                             {"fock1", CVP_FAMILY_FOCK, 1.0},
                             {"coherent1", CVP_FAMILY_COHERENT, 1.0}};
constexpr double kDbs[] = {1.0, 5.0, 10.0};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

double root_re(const Plan &p, std::size_t j) {
    double re = 0.0, im = 0.0;
    check(cvp_plan_root(p.get(), j, &re, &im));
    return re;
}

double root_im(const Plan &p, std::size_t j) {
    double re = 0.0, im = 0.0;
    check(cvp_plan_root(p.get(), j, &re, &im));
    return im;
}

// Ancillas whose wave function (center plus seven widths) sits inside the oracle window.
bool fits(const cvp_ancilla &a, const cvp_grid &g) {
    return std::abs(a.q0) + 3.5 * a.k < g.q_max;
}

void oracle_equivalence(Report &r, double tol) {
    const cvp_grid og = cvp_oracle_grid();
    const Plan plan = cubic_plan(0.1);
    const std::size_t l = cvp_plan_degree(plan.get());
    for (const Input &in : kInputs) {
        const State psi = make_state([&](cvp_state **o) { return cvp_state_family(in.family, in.x, &og, o); });
        for (double db : kDbs) {
            double k1 = 0.0, k2 = 0.0;
            check(cvp_db_to_k(db, CVP_ANTI_SQUEEZED_Q, &k1));
            check(cvp_db_to_k(db, CVP_SQUEEZED_Q, &k2));
            for (std::size_t j = 0; j < l; ++j) {
                const std::string tag = std::string(in.name) + "/" + fmt(db) + "dB/root" + std::to_string(j);
                cvp_ancilla a1{};
                check(cvp_ancilla_method1(root_re(plan, j), root_im(plan, j), k1, 0.0, &a1));
                if (fits(a1, og)) {
                    for (double m : {-0.3, 0.0, 0.3}) {
                        cvp_oracle_check c{};
                        check(cvp_oracle_method1(psi.get(), &a1, m, &og, &c));
                        r.add("oracle_method1/" + tag + "/m=" + fmt(m), c.deficit, tol);
                        r.add("homodyne_density_method1/" + tag + "/m=" + fmt(m),
                              std::abs(c.weight_oracle - c.weight_closed), tol);
                    }
                }
                cvp_ancilla a2{};
                check(cvp_ancilla_method2(root_re(plan, j), root_im(plan, j), k2, &a2));
                cvp_oracle_check c{};
                check(cvp_oracle_method2(psi.get(), &a2, &og, &c));
                r.add("oracle_method2/" + tag, c.deficit, tol);
                r.add("click_probability_method2/" + tag, std::abs(c.weight_oracle - c.weight_closed), 1e-6);
            }
        }
    }
}

void homodyne_marginal(Report &r, double tol) {
    const cvp_grid og = cvp_oracle_grid();
    const Plan plan = cubic_plan(0.1);
    double k = 0.0;
    check(cvp_db_to_k(5.0, CVP_ANTI_SQUEEZED_Q, &k));
    cvp_ancilla a{};
    check(cvp_ancilla_method1(root_re(plan, 0), root_im(plan, 0), k, 0.0, &a));
    const State vac = make_state([&](cvp_state **o) { return cvp_state_fock(0, &og, o); });
    double worst = 0.0;
    for (int i = 0; i <= 10; ++i) {
        cvp_oracle_check c{};
        check(cvp_oracle_method1(vac.get(), &a, -1.0 + 0.2 * i, &og, &c));
        worst = std::max(worst, std::abs(c.weight_oracle - c.weight_closed));
    }
    r.add("homodyne_pdf_vs_oracle/vacuum/5dB/11pts", worst, tol);
}

void closed_form_density(Report &r, const cvp_grid &grid) {
    const Plan plan = cubic_plan(0.1);
    double k = 0.0;
    check(cvp_db_to_k(5.0, CVP_ANTI_SQUEEZED_Q, &k));
    cvp_ancilla a{};
    check(cvp_ancilla_method1(root_re(plan, 0), root_im(plan, 0), k, 0.0, &a));
    for (const Input &in : kInputs) {
        const State psi = make_state([&](cvp_state **o) { return cvp_state_family(in.family, in.x, &grid, o); });
        const double x = in.family == CVP_FAMILY_COHERENT ? std::sqrt(in.x) : in.x;
        double worst = 0.0;
        for (double m : {-0.5, 0.0, 0.5}) {
            double quad = 0.0, closed = 0.0;
            check(cvp_homodyne_pdf(psi.get(), &a, m, &quad));
            check(cvp_gaussian_moment_pdf(in.family, x, 0.0, &a, m, &closed));
            worst = std::max(worst, std::abs(quad - closed));
        }
        r.add(std::string("gaussian_moment_pdf/") + in.name, worst, 1e-8);
    }
}

void click_statistics(Report &r) {
    const cvp_grid og = cvp_oracle_grid();
    const Plan plan = cubic_plan(0.1);
    double k = 0.0;
    check(cvp_db_to_k(5.0, CVP_SQUEEZED_Q, &k));
    cvp_ancilla solved{};
    check(cvp_ancilla_method2(root_re(plan, 0), root_im(plan, 0), k, &solved));
    const cvp_ancilla vacuum{0.0, 0.0, std::sqrt(2.0)};
    const State psi = make_state([&](cvp_state **o) { return cvp_state_fock(0, &og, o); });
    for (const auto &[name, anc] : {std::pair{"vacuum_ancilla", vacuum}, std::pair{"5dB_ancilla", solved}}) {
        double worst = 0.0;
        for (unsigned n = 0; n <= 4; ++n) {
            double p = 0.0, po = 0.0;
            check(cvp_spc_probability(psi.get(), &anc, n, &p));
            check(cvp_oracle_spc_probability(psi.get(), &anc, n, &og, &po));
            worst = std::max(worst, std::abs(p - po));
        }
        r.add(std::string("spc_probability_vs_oracle/") + name, worst, 1e-6);
    }
}

struct Fidelities {
    double method1;
    double method2;
    double bare_vacuum;
    double bare_fock3;
};

Fidelities reported_fidelities(const cvp_grid &grid) {
    const Plan plan = cubic_plan(0.1);
    const State in = make_state([&](cvp_state **o) { return cvp_state_momentum_squeezed(5.0, &grid, o); });
    const State target = make_state([&](cvp_state **o) { return cvp_apply_cubic(in.get(), 0.1, o); });
    const State m1 = make_state([&](cvp_state **o) { return cvp_method1_exact(plan.get(), in.get(), 5.0, nullptr, o); });
    double prob = 0.0;
    const State m2 = make_state([&](cvp_state **o) {
        return cvp_method2_chain(plan.get(), in.get(), 5.0, CVP_SQUEEZED_Q, o, &prob, nullptr, 0);
    });
    Fidelities f{};
    check(cvp_fidelity(m1.get(), target.get(), &f.method1));
    check(cvp_fidelity(m2.get(), target.get(), &f.method2));
    const State vac = make_state([&](cvp_state **o) { return cvp_state_fock(0, &grid, o); });
    const State f3 = make_state([&](cvp_state **o) { return cvp_state_fock(3, &grid, o); });
    check(cvp_bare_fidelity(0.1, vac.get(), &f.bare_vacuum));
    check(cvp_bare_fidelity(0.1, f3.get(), &f.bare_fock3));
    return f;
}

void grid_refinement(Report &r, const cvp_grid &grid) {
    const cvp_grid fine{grid.q_min, grid.q_max, grid.n_points * 2};
    const Fidelities a = reported_fidelities(grid);
    const Fidelities b = reported_fidelities(fine);
    r.add("grid_refine/method1_state_prep", std::abs(a.method1 - b.method1), 1e-6);
    r.add("grid_refine/method2_state_prep", std::abs(a.method2 - b.method2), 1e-6);
    r.add("grid_refine/bare_vacuum", std::abs(a.bare_vacuum - b.bare_vacuum), 1e-6);
    r.add("grid_refine/bare_fock3", std::abs(a.bare_fock3 - b.bare_fock3), 1e-6);
}

}  // namespace

int cmd_verify(const Settings &s) {
    Report r;
    oracle_equivalence(r, s.tolerance);
    homodyne_marginal(r, s.tolerance);
    closed_form_density(r, s.grid);
    click_statistics(r);
    if (s.grid_refine) {
        grid_refinement(r, s.grid);
    }
    std::size_t failed = 0;
    for (const auto &c : r.checks) {
        failed += c["pass"].get<bool>() ? 0 : 1;
    }
    const nlohmann::json report{{"all_pass", r.ok},
                                {"checks_run", r.checks.size()},
                                {"checks_failed", failed},
                                {"oracle_tolerance", s.tolerance},
                                {"grid_refine", s.grid_refine},
                                {"checks", r.checks}};
    write_json(s, "verify_report.json", report);
    write_manifest(s, "verify", "verify_report.json", {{"oracle_grid", "[-15, 15] x [-15, 15], 1024 points per mode"}});
    std::printf("verify: %zu checks, %zu failed\n", r.checks.size(), failed);
    return r.ok ? 0 : 4;
}

}  // namespace cli
