#pragma once

#include <cstddef>
#include <vector>

namespace cvpoly::detail {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Gauss-Legendre rule with `n` nodes mapped onto [lo, hi], nodes ascending.
QuadratureRule gauss_legendre(std::size_t n, double lo, double hi);

}  // namespace cvpoly::detail
