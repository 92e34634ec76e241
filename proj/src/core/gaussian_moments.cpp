#include <cmath>
#include <numbers>
#include <vector>

#include "cvpoly/method1.hpp"

namespace cvpoly {

namespace {

// Real polynomial, ascending coefficients.
using Poly = std::vector<double>;

Poly mul(const Poly &a, const Poly &b) {
    Poly out(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            out[i + j] += a[i] * b[j];
        }
    }
    return out;
}

// Coefficients of p(x + c) in powers of x.
Poly shift(const Poly &p, double c) {
    Poly out(p.size(), 0.0);
    // Horner in polynomial arithmetic: out = (...(p_n (x+c) + p_{n-1})(x+c) ...)
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
        Poly next(out.size(), 0.0);
        for (std::size_t i = 0; i + 1 < out.size(); ++i) {
            next[i + 1] += out[i];
            next[i] += c * out[i];
        }
        next[0] += *it;
        out = std::move(next);
    }
    return out;
}

// Normalized Hermite polynomial h_n with h_n(x) e^{-x^2/2} pi^{-1/4} the Fock wave function.
Poly hermite_normalized(unsigned n) {
    Poly prev{1.0};
    if (n == 0) {
        return prev;
    }
    Poly cur{0.0, std::sqrt(2.0)};
    for (unsigned j = 1; j < n; ++j) {
        Poly next(cur.size() + 1, 0.0);
        const double a = std::sqrt(2.0 / (j + 1));
        const double b = std::sqrt(static_cast<double>(j) / (j + 1));
        for (std::size_t i = 0; i < cur.size(); ++i) {
            next[i + 1] += a * cur[i];
        }
        for (std::size_t i = 0; i < prev.size(); ++i) {
            next[i] -= b * prev[i];
        }
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

// Q(x) exp(-a2 x^2 + a1 x + a0) with a2 > 0.
struct GaussPoly {
    Poly q;
    double a2;
    double a1;
    double a0;
};

GaussPoly product(const GaussPoly &u, const GaussPoly &v) {
    return GaussPoly{mul(u.q, v.q), u.a2 + v.a2, u.a1 + v.a1, u.a0 + v.a0};
}

// Q(x) exp(-w (x - c)^2).
GaussPoly centered(Poly q, double w, double c) {
    return GaussPoly{std::move(q), w, 2.0 * w * c, -w * c * c};
}

double integrate(const GaussPoly &g) {
    const double mu = g.a1 / (2.0 * g.a2);
    const double sigma = std::sqrt(1.0 / (2.0 * g.a2));
    const Poly gamma = shift(g.q, mu);
    double sum = 0.0;
    for (std::size_t n = 0; n < gamma.size(); ++n) {
        sum += gamma[n] * centered_gaussian_moment(static_cast<unsigned>(n), sigma);
    }
    return std::exp(g.a0 + g.a1 * g.a1 / (4.0 * g.a2)) * std::sqrt(std::numbers::pi / g.a2) * sum;
}

// Position density of the input at y = x - m, as a function of x.
GaussPoly input_density(const AnalyticInput &input, double m) {
    const double norm = 1.0 / std::sqrt(std::numbers::pi);
    if (const auto *c = std::get_if<CoherentInput>(&input)) {
        const double x0 = std::sqrt(2.0) * c->alpha.real();
        return centered(Poly{norm}, 1.0, x0 + m);
    }
    const unsigned n = std::get<FockInput>(input).n;
    if (n > 30) {
        throw Error(ErrorCode::InvalidArgument, "closed-form Fock densities are limited to n <= 30");
    }
    const Poly h = hermite_normalized(n);
    Poly sq = mul(h, h);
    for (double &v : sq) {
        v *= norm;
    }
    return centered(shift(sq, -m), 1.0, m);
}

// Unnormalized |a sigma(x)|^2 up to the constant C^2 / 2.
GaussPoly ancilla_density(const SqueezedParams &ancilla) {
    const double k2 = ancilla.k * ancilla.k;
    const double slope = 1.0 - 2.0 / k2;
    const double offset = 2.0 * ancilla.q0() / k2;
    const double p0 = ancilla.p0();
    Poly q{offset * offset + p0 * p0, 2.0 * slope * offset, slope * slope};
    return centered(std::move(q), 2.0 / k2, ancilla.q0());
}

}  // namespace

double centered_gaussian_moment(unsigned n, double sigma) {
    if (n % 2 == 1) {
        return 0.0;
    }
    double v = 1.0;
    for (unsigned j = n - 1; j >= 1 && j < n; j -= 2) {
        v *= j;
    }
    return v * std::pow(sigma, static_cast<double>(n));
}

double gaussian_moment_pdf(const AnalyticInput &input, const SqueezedParams &ancilla, double m) {
    ancilla.validate();
    const GaussPoly anc = ancilla_density(ancilla);
    const double anc_norm = integrate(anc);
    if (!(anc_norm > 1e-20)) {
        throw Error(ErrorCode::ZeroAncilla, "photon subtraction annihilates the ancilla (vacuum, alpha = 0)");
    }
    return integrate(product(input_density(input, m), anc)) / anc_norm;
}

}  // namespace cvpoly
