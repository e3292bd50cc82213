#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "fhc/model.hpp"

namespace fhc {

/// Translation-invariant boundary law (z1, z2): a positive solution of the
/// tree recursion z_i = lambda * (D_i/D_0)^k with D_i = a_i0 + a_i1 z1 + a_i2 z2.
struct BoundaryFixedPoint {
    double z1 = 0.0;
    double z2 = 0.0;
    ModelParams params;
    double residual = 0.0;  // max_i |z_i - rhs_i|, scaled by max(1, z_i)

    BoundaryFixedPoint(double z1_, double z2_, ModelParams p, double res)
        : z1(z1_), z2(z2_), params(std::move(p)), residual(res) {}

    bool symmetric() const {
        return std::abs(z1 - z2) <= 1e-8 * std::max(1.0, z1);
    }
};

struct SolutionSet {
    std::vector<BoundaryFixedPoint> solutions;  // sorted by z1, deduplicated
    int count() const { return static_cast<int>(solutions.size()); }
};

/// One step of the tree recursion: (lambda (D1/D0)^k, lambda (D2/D0)^k).
std::pair<double, double> rhs(const ModelParams& params, double z1, double z2);

/// The unique symmetric fixed point z = lambda*(D1(z,z)/D0(z,z))^k, found by
/// sign-change bracketing + bisection with a Newton polish. Requires the
/// symmetric reduction to be strictly decreasing (true for both presets).
BoundaryFixedPoint solve_symmetric(const ModelParams& params);

/// Inverse of the symmetric equation: the activity at which z is the
/// symmetric fixed point. Loop: z((1+2z)/(1+z))^k; rod: z(2z/(1+z))^k.
double lambda_of_z(const GraphSpec& graph, int k, double z);

/// Activity at which the number of translation-invariant measures jumps
/// from one to three. Loop: ((k+1)/k)^k/(k-1); rod: (2/k)^k/(k-1).
double lambda_cr(const GraphSpec& graph, int k);

/// All positive fixed points: symmetric solve plus damped multi-start
/// iteration from strongly asymmetric seeds, Newton-polished, deduplicated,
/// closed under the (z1,z2) swap.
SolutionSet solve_all_ti(const ModelParams& params);

}  // namespace fhc
