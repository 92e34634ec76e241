#include "cvpoly/gates.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace cvpoly {

namespace {

constexpr int kMaxDegree = 24;
constexpr double kResidualLimit = 1e-8;

std::vector<cplx> poly_mul(const std::vector<cplx> &a, const std::vector<cplx> &b) {
    std::vector<cplx> out(a.size() + b.size() - 1, cplx(0.0, 0.0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            out[i + j] += a[i] * b[j];
        }
    }
    return out;
}

cplx poly_eval(const std::vector<cplx> &c, double q) {
    cplx acc{0.0, 0.0};
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        acc = acc * q + *it;
    }
    return acc;
}

void trim_leading_zeros(std::vector<cplx> &c) {
    while (c.size() > 1 && std::abs(c.back()) == 0.0) {
        c.pop_back();
    }
}

}  // namespace

DiagonalUnitary DiagonalUnitary::cubic_phase(double nu) {
    return DiagonalUnitary{{0.0, 0.0, 0.0, -1.0}, nu};
}

int DiagonalUnitary::degree() const {
    int d = static_cast<int>(hamiltonian_coeffs.size()) - 1;
    while (d > 0 && hamiltonian_coeffs[d] == 0.0) {
        --d;
    }
    return d;
}

cplx DiagonalUnitary::operator()(double q) const {
    double p = 0.0;
    for (auto it = hamiltonian_coeffs.rbegin(); it != hamiltonian_coeffs.rend(); ++it) {
        p = p * q + *it;
    }
    return std::polar(1.0, -time * p);
}

cplx MonomialPlan::operator()(double q) const {
    cplx acc = leading_coeff;
    for (const cplx &r : roots) {
        acc *= (q - r);
    }
    return acc;
}

std::vector<cplx> taylor_coefficients(const DiagonalUnitary &u, int order_n) {
    if (order_n < 1) {
        throw Error(ErrorCode::InvalidArgument, "Taylor order must be at least 1");
    }
    if (u.degree() < 1) {
        throw Error(ErrorCode::InvalidArgument, "Hamiltonian must have degree >= 1");
    }
    // -i t P(q)
    std::vector<cplx> gen(static_cast<std::size_t>(u.degree()) + 1);
    for (std::size_t i = 0; i < gen.size(); ++i) {
        gen[i] = cplx(0.0, -u.time) * u.hamiltonian_coeffs[i];
    }
    std::vector<cplx> sum{cplx(1.0, 0.0)};
    std::vector<cplx> term{cplx(1.0, 0.0)};
    for (int j = 1; j <= order_n; ++j) {
        term = poly_mul(term, gen);
        for (cplx &c : term) {
            c /= static_cast<double>(j);
        }
        sum.resize(std::max(sum.size(), term.size()), cplx(0.0, 0.0));
        for (std::size_t i = 0; i < term.size(); ++i) {
            sum[i] += term[i];
        }
    }
    trim_leading_zeros(sum);
    return sum;
}

double reconstruction_residual(const MonomialPlan &plan, const std::vector<cplx> &taylor) {
    constexpr int kSamples = 20;
    double worst = 0.0;
    double scale = 0.0;
    for (int i = 0; i < kSamples; ++i) {
        const double q = 5.0 * std::cos(std::numbers::pi * (i + 0.5) / kSamples);
        const cplx expected = poly_eval(taylor, q);
        worst = std::max(worst, std::abs(plan(q) - expected));
        scale = std::max(scale, std::abs(expected));
    }
    return worst / scale;
}

MonomialPlan taylor_factorize(const DiagonalUnitary &u, int order_n) {
    std::vector<cplx> coeffs = taylor_coefficients(u, order_n);
    const int degree = static_cast<int>(coeffs.size()) - 1;
    if (degree > kMaxDegree) {
        throw Error(ErrorCode::InvalidArgument,
                    "polynomial degree " + std::to_string(degree) + " exceeds the root-finder limit of 24");
    }

    MonomialPlan plan;
    plan.order_n = order_n;
    plan.degree_l = degree;
    plan.leading_coeff = coeffs.back();
    if (degree > 0) {
        Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(degree, degree);
        for (int i = 1; i < degree; ++i) {
            companion(i, i - 1) = 1.0;
        }
        for (int i = 0; i < degree; ++i) {
            companion(i, degree - 1) = -coeffs[static_cast<std::size_t>(i)] / plan.leading_coeff;
        }
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
        if (solver.info() != Eigen::Success) {
            throw Error(ErrorCode::IllConditioned, "companion-matrix eigensolver did not converge");
        }
        const auto &ev = solver.eigenvalues();
        plan.roots.assign(ev.data(), ev.data() + ev.size());
    }

    // Conjugate-like pairs share Im up to rounding; compare Im with a tolerance.
    constexpr double tie = 1e-9;
    std::sort(plan.roots.begin(), plan.roots.end(), [&](const cplx &a, const cplx &b) {
        const double scale = std::max({1.0, std::abs(a), std::abs(b)});
        if (std::abs(a.imag() - b.imag()) > tie * scale) {
            return a.imag() < b.imag();
        }
        return a.real() < b.real();
    });

    const double residual = reconstruction_residual(plan, coeffs);
    if (!(residual <= kResidualLimit)) {
        throw Error(ErrorCode::IllConditioned,
                    "monomial product misses the Taylor polynomial by " + std::to_string(residual));
    }
    return plan;
}

WaveFunction apply_diagonal(const WaveFunction &psi, const std::function<cplx(double)> &f) {
    const Grid &g = psi.grid();
    std::vector<cplx> out(g.n_points);
    for (std::size_t i = 0; i < g.n_points; ++i) {
        out[i] = f(g.node(i)) * psi[i];
    }
    return WaveFunction(g, std::move(out));
}

cplx lambda_method1(const SqueezedParams &ancilla, double m) {
    const double k2 = ancilla.k * ancilla.k;
    if (std::abs(k2 - 2.0) <= 1e-6) {
        throw Error(ErrorCode::SingularAncilla, "k^2 = 2 (vacuum-width ancilla) has no finite lambda");
    }
    return cplx(-2.0 / (k2 - 2.0) * ancilla.q0() - m, -k2 / (k2 - 2.0) * ancilla.p0());
}

cplx lambda_method2(const SqueezedParams &ancilla) {
    const double k2 = ancilla.k * ancilla.k;
    return cplx(-ancilla.p0(), 2.0 / k2 * ancilla.q0());
}

SqueezedParams solve_ancilla_method1(cplx target_lambda, double k, double target_m) {
    if (!(k > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "k must be positive");
    }
    const double k2 = k * k;
    if (std::abs(k2 - 2.0) <= 1e-6) {
        throw Error(ErrorCode::SingularAncilla, "a vacuum-width ancilla (k = sqrt 2) cannot reach lambda");
    }
    const double q0 = -(k2 - 2.0) * (target_lambda.real() + target_m) / 2.0;
    const double p0 = -((k2 - 2.0) / k2) * target_lambda.imag();
    return SqueezedParams::from_quadratures(q0, p0, k);
}

SqueezedParams solve_ancilla_method2(cplx target_lambda, double k) {
    if (!(k > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "k must be positive");
    }
    const double p0 = -target_lambda.real();
    const double q0 = (k * k / 2.0) * target_lambda.imag();
    return SqueezedParams::from_quadratures(q0, p0, k);
}

EffectiveBlock EffectiveBlock::photon_subtracted(const SqueezedParams &ancilla, double m) {
    ancilla.validate();
    EffectiveBlock b;
    b.method = Method::PhotonSubtracted;
    b.ancilla = ancilla;
    b.k = ancilla.k;
    b.homodyne_m = m;
    b.lambda = lambda_method1(ancilla, m);
    b.envelope_center = ancilla.q0() - m;
    b.envelope_width_sq = ancilla.k * ancilla.k;
    return b;
}

EffectiveBlock EffectiveBlock::single_photon_counter(const SqueezedParams &ancilla) {
    ancilla.validate();
    const double k2 = ancilla.k * ancilla.k;
    EffectiveBlock b;
    b.method = Method::SinglePhotonCounter;
    b.ancilla = ancilla;
    b.k = ancilla.k;
    b.lambda = lambda_method2(ancilla);
    b.envelope_center = -ancilla.p0();
    b.envelope_width_sq = (4.0 + 2.0 * k2) / k2;
    return b;
}

cplx EffectiveBlock::operator()(double q) const {
    const double d = q - envelope_center;
    return std::exp(-d * d / envelope_width_sq) * (q - lambda);
}

Normalized apply_effective_block(const WaveFunction &psi, const EffectiveBlock &block) {
    return normalize(apply_diagonal(psi, [&](double q) { return block(q); }));
}

}  // namespace cvpoly
