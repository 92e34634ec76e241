#include "cvpoly/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cvpoly/parallel.hpp"
#include "fft.hpp"

namespace cvpoly {

double fidelity_pure(const WaveFunction &a, const WaveFunction &b) {
    const double na = a.squared_norm();
    const double nb = b.squared_norm();
    if (na < 1e-300 || nb < 1e-300) {
        throw Error(ErrorCode::ZeroNorm, "fidelity of a zero-norm state");
    }
    return std::min(1.0, std::abs(inner(a, b)) / std::sqrt(na * nb));
}

double fidelity_mixed(const OutcomeEnsemble &ensemble, const WaveFunction &target) {
    return fidelity_postselected(ensemble, target);
}

WaveFunction apply_unitary(const DiagonalUnitary &u, const WaveFunction &psi) {
    return normalize(apply_diagonal(psi, [&](double q) { return u(q); })).state;
}

WaveFunction apply_plan(const MonomialPlan &plan, const WaveFunction &psi) {
    return normalize(apply_diagonal(psi, [&](double q) { return plan(q); })).state;
}

double bare_polynomial_fidelity(const DiagonalUnitary &u, const MonomialPlan &plan, const WaveFunction &input) {
    const WaveFunction in = normalize(input).state;
    return fidelity_pure(apply_unitary(u, in), apply_plan(plan, in));
}

std::vector<double> AxisSpec::values() const {
    if (count == 0 || !(lo <= hi)) {
        throw Error(ErrorCode::InvalidArgument, "empty axis");
    }
    std::vector<double> v(count, lo);
    for (std::size_t i = 1; i < count; ++i) {
        v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
    }
    return v;
}

namespace {

std::vector<double> trapezoid_weights(const std::vector<double> &x) {
    std::vector<double> w(x.size(), 0.0);
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        const double h = 0.5 * (x[i + 1] - x[i]);
        w[i] += h;
        w[i + 1] += h;
    }
    return w;
}

}  // namespace

WignerGrid wigner(const WaveFunction &psi, const AxisSpec &q_spec, const AxisSpec &p_spec) {
    const Grid &g = psi.grid();
    const double dq = g.spacing();
    const std::size_t n = g.n_points;
    const std::size_t half = n / 2;

    // q snaps to the half-node lattice: psi*(q + y) psi(q - y) pairs two nodes
    // whenever 2q is a sum of nodes, so midpoints are as exact as nodes.
    std::vector<std::size_t> rows;  // doubled index: q = q_min + row * dq / 2
    for (double q : q_spec.values()) {
        const double pos = std::clamp(std::round(2.0 * (q - g.q_min) / dq), 0.0, 2.0 * static_cast<double>(n - 1));
        rows.push_back(static_cast<std::size_t>(pos));
    }
    const std::vector<double> ps = p_spec.values();
    const double dp = ps.size() > 1 ? ps[1] - ps[0] : 0.0;

    WignerGrid out;
    out.p_axis = ps;
    for (std::size_t r : rows) {
        out.q_axis.push_back(g.q_min + 0.5 * static_cast<double>(r) * dq);
    }
    out.values.assign(rows.size() * ps.size(), 0.0);

    // y_j = (j - half) dq on nodes, shifted by dq / 2 on midpoints.
    const double offset0 = -static_cast<double>(half) * dq;
    const detail::ChirpTransform on_node(2 * half + 1, offset0, dq, ps.size(), 2.0 * ps.front(), 2.0 * dp);
    const detail::ChirpTransform on_mid(2 * half + 1, offset0 + 0.5 * dq, dq, ps.size(), 2.0 * ps.front(), 2.0 * dp);
    std::vector<cplx> c(2 * half + 1);
    const double scale = dq / std::numbers::pi;
    const auto len = static_cast<std::ptrdiff_t>(n);
    for (std::size_t ir = 0; ir < rows.size(); ++ir) {
        const auto odd = static_cast<std::ptrdiff_t>(rows[ir] % 2);
        const auto base = static_cast<std::ptrdiff_t>(rows[ir] / 2);
        for (std::size_t jj = 0; jj < c.size(); ++jj) {
            const std::ptrdiff_t j = static_cast<std::ptrdiff_t>(jj) - static_cast<std::ptrdiff_t>(half);
            const std::ptrdiff_t a = base + odd + j;
            const std::ptrdiff_t b = base - j;
            const bool inside = a >= 0 && b >= 0 && a < len && b < len;
            c[jj] = inside ? std::conj(psi[static_cast<std::size_t>(a)]) * psi[static_cast<std::size_t>(b)]
                           : cplx(0.0, 0.0);
        }
        const std::vector<cplx> s = (odd ? on_mid : on_node).apply(c);
        for (std::size_t ip = 0; ip < ps.size(); ++ip) {
            out.values[ir * ps.size() + ip] = scale * s[ip].real();
        }
    }

    out.min_value = *std::min_element(out.values.begin(), out.values.end());
    out.max_value = *std::max_element(out.values.begin(), out.values.end());
    const auto wq = trapezoid_weights(out.q_axis);
    const auto wp = trapezoid_weights(out.p_axis);
    double total = 0.0;
    for (std::size_t iq = 0; iq < wq.size(); ++iq) {
        for (std::size_t ip = 0; ip < wp.size(); ++ip) {
            total += wq[iq] * wp[ip] * out.at(iq, ip);
        }
    }
    out.integral = total;
    return out;
}

int count_negative_regions(const WignerGrid &w, double rel_threshold) {
    const std::size_t nq = w.q_axis.size();
    const std::size_t np = w.p_axis.size();
    const double cut = -rel_threshold * w.max_value;
    std::vector<char> seen(nq * np, 0);
    std::vector<std::size_t> stack;
    int regions = 0;
    for (std::size_t start = 0; start < nq * np; ++start) {
        if (seen[start] || !(w.values[start] < cut)) {
            continue;
        }
        ++regions;
        seen[start] = 1;
        stack.push_back(start);
        while (!stack.empty()) {
            const std::size_t cell = stack.back();
            stack.pop_back();
            const std::size_t iq = cell / np;
            const std::size_t ip = cell % np;
            auto visit = [&](std::size_t nb) {
                if (!seen[nb] && w.values[nb] < cut) {
                    seen[nb] = 1;
                    stack.push_back(nb);
                }
            };
            if (iq > 0) visit(cell - np);
            if (iq + 1 < nq) visit(cell + np);
            if (ip > 0) visit(cell - 1);
            if (ip + 1 < np) visit(cell + 1);
        }
    }
    return regions;
}

WaveFunction make_family_input(InputFamily family, double x, const Grid &grid) {
    if (!(x >= 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "sweep coordinate must be non-negative");
    }
    if (family == InputFamily::Fock) {
        const double n = std::round(x);
        if (std::abs(n - x) > 1e-12) {
            throw Error(ErrorCode::InvalidArgument, "Fock sweep coordinate must be an integer");
        }
        return make_fock(static_cast<unsigned>(n), grid);
    }
    return make_coherent(cplx(std::sqrt(x), 0.0), grid);
}

WaveFunction momentum_squeezed_input(double db, const Grid &grid) {
    return make_squeezed(SqueezedParams{cplx(0.0, 0.0), db_to_k(db, SqueezingAxis::AntiSqueezedQ)}, grid);
}

std::vector<double> default_sweep_x() {
    std::vector<double> xs;
    for (int i = 0; i <= 10; ++i) {
        xs.push_back(i);
    }
    return xs;
}

namespace {

template <typename Point>
std::vector<SweepPoint> run_sweep(const std::vector<double> &xs, unsigned jobs, Point &&point) {
    std::vector<SweepPoint> out(xs.size());
    parallel_for(xs.size(), jobs, [&](std::size_t i) { out[i] = point(xs[i]); });
    return out;
}

}  // namespace

std::vector<SweepPoint> sweep_bare(InputFamily family, const std::vector<double> &xs, double nu, const Grid &grid,
                                   unsigned jobs) {
    const DiagonalUnitary u = DiagonalUnitary::cubic_phase(nu);
    if (nu == 0.0) {
        return run_sweep(xs, jobs, [&](double x) { return SweepPoint{x, 1.0, std::nullopt}; });
    }
    const MonomialPlan plan = taylor_factorize(u, 1);
    return run_sweep(xs, jobs, [&](double x) {
        return SweepPoint{x, bare_polynomial_fidelity(u, plan, make_family_input(family, x, grid)), std::nullopt};
    });
}

std::vector<SweepPoint> sweep_method1_exact(InputFamily family, const std::vector<double> &xs, double nu, double db,
                                            const Grid &grid, unsigned jobs) {
    const DiagonalUnitary u = DiagonalUnitary::cubic_phase(nu);
    const Method1Config cfg = Method1Config::centered(taylor_factorize(u, 1), db, 0.1);
    return run_sweep(xs, jobs, [&](double x) {
        const WaveFunction in = normalize(make_family_input(family, x, grid)).state;
        const WaveFunction out = chain_method1_exact(in, cfg);
        return SweepPoint{x, fidelity_pure(apply_unitary(u, in), out), std::nullopt};
    });
}

std::vector<SweepPoint> sweep_method1_postselect(InputFamily family, const std::vector<double> &xs, double nu,
                                                 double db, double delta, int nodes, const Grid &grid,
                                                 unsigned jobs) {
    const DiagonalUnitary u = DiagonalUnitary::cubic_phase(nu);
    const Method1Config cfg = Method1Config::centered(taylor_factorize(u, 1), db, delta, nodes);
    return run_sweep(xs, jobs, [&](double x) {
        const WaveFunction in = normalize(make_family_input(family, x, grid)).state;
        const OutcomeEnsemble ens = postselect_ensemble(in, cfg);
        return SweepPoint{x, fidelity_postselected(ens, apply_unitary(u, in)), ens.region_prob};
    });
}

std::vector<SweepPoint> sweep_method2(InputFamily family, const std::vector<double> &xs, double nu, double db,
                                      SqueezingAxis convention, const Grid &grid, unsigned jobs) {
    const DiagonalUnitary u = DiagonalUnitary::cubic_phase(nu);
    Method2Config cfg;
    cfg.plan = taylor_factorize(u, 1);
    cfg.squeezing_db = db;
    cfg.convention = convention;
    return run_sweep(xs, jobs, [&](double x) {
        const WaveFunction in = normalize(make_family_input(family, x, grid)).state;
        const Method2Result res = chain_method2(in, cfg);
        return SweepPoint{x, fidelity_pure(apply_unitary(u, in), res.state), res.success_prob};
    });
}

}  // namespace cvpoly
