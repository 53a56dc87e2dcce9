#pragma once

#include <vector>

namespace biharm {

struct GaussRule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;
};

/// Gauss-Legendre rule of the given order (Newton iteration on P_n).
GaussRule gauss_legendre(int order);

/// Composite Gauss-Legendre nodes and weights on [a, b] with equal panels.
struct PanelRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

PanelRule composite_gauss(double a, double b, int panels, int order);

}  // namespace biharm
