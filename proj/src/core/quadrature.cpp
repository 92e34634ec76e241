#include "quadrature.hpp"

#include <gsl/gsl_integration.h>

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace cvpoly::detail {

QuadratureRule gauss_legendre(std::size_t n, double lo, double hi) {
    if (n == 0) {
        throw std::invalid_argument("gauss_legendre needs at least one node");
    }
    gsl_integration_glfixed_table *table = gsl_integration_glfixed_table_alloc(n);
    if (table == nullptr) {
        throw std::runtime_error("gsl_integration_glfixed_table_alloc failed");
    }
    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        gsl_integration_glfixed_point(lo, hi, i, &rule.nodes[i], &rule.weights[i], table);
    }
    gsl_integration_glfixed_table_free(table);

    // GSL lists nodes in its own order; callers expect ascending.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return rule.nodes[a] < rule.nodes[b];
    });
    QuadratureRule sorted;
    for (std::size_t i : order) {
        sorted.nodes.push_back(rule.nodes[i]);
        sorted.weights.push_back(rule.weights[i]);
    }
    return sorted;
}

}  // namespace cvpoly::detail
