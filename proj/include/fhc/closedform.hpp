#pragma once

#include <array>
#include <vector>

#include "fhc/model.hpp"

namespace fhc {

enum class PresetGraph { Loop, Rod };

PresetGraph preset_of(const GraphSpec& graph);

/// Monic quartic x^4 + b x^3 + c x^2 + d x + e.
struct QuarticCoeffs {
    double b = 0, c = 0, d = 0, e = 0;
    double eval(double x) const { return (((x + b) * x + c) * x + d) * x + e; }
    double deriv(double x) const {
        return ((4 * x + 3 * b) * x + 2 * c) * x + d;
    }
    double max_abs_coeff() const;
};

/// Monic form of the symmetric fixed-point quartic after x = z^(1/3),
/// a = lambda^(1/3). Loop: 2x^4 - ax^3 + x - a = 0; rod: 2x^4 - ax^3 - a = 0.
QuarticCoeffs quartic_for(PresetGraph graph, double a);

/// Coefficients (p, q, r) of the depressed quartic y^4 + p y^2 + q y + r
/// obtained by the shift x = y - b/4.
std::array<double, 3> depressed_coeffs(const QuarticCoeffs& q);

/// All real roots of a monic cubic t^3 + b t^2 + c t + d, ascending.
std::vector<double> cubic_real_roots(double b, double c, double d);

/// All distinct real roots of a monic quartic via the Ferrari reduction
/// (resolvent cubic + two quadratics), Newton-polished, ascending.
std::vector<double> ferrari_real_roots(const QuarticCoeffs& q);

struct ResolventRoot {
    double t0 = 0;        // numeric root of the resolvent cubic
    double a = 0;
    double residual = 0;  // cubic residual of t0
    double printed_value = 0;     // the closed-form radical expression
    double printed_residual = 0;  // its cubic residual
};

/// Resolvent cubic of the graph's quartic:
///   loop: 8t^3 - (3/4)a^2 t^2 + ((3/128)a^4 + (7/2)a) t - (1/2 - a^3/64)^2
///   rod:  8t^3 - (3/4)a^2 t^2 + ((3/128)a^4 + 4a) t - a^6/4096
/// Returns the numeric root closest to the closed-form radical expression;
/// both values and residuals are recorded.
ResolventRoot resolvent_t0(PresetGraph graph, double a);

double resolvent_cubic_eval(PresetGraph graph, double a, double t);

struct PositiveRoot {
    double x = 0;  // the unique positive quartic root
    double quartic_residual = 0;
    // sign labels of the Ferrari branch that validated:
    // outer_sign * (1/2)sqrt(2 t0), inner_sign inside the second sqrt
    int outer_sign = 0;
    int inner_sign = 0;
    bool from_bisection_fallback = false;  // no branch reproduced the root
};

/// Unique positive root of the graph's quartic. Every Ferrari branch is
/// evaluated and filtered by quartic residual; branch labels are reported
/// but never trusted. Falls back to the (always available) bisection root.
PositiveRoot positive_root(PresetGraph graph, double a);

/// Independent oracle: bisection on the quartic over an expanding bracket.
double bisection_positive_root(PresetGraph graph, double a);

/// (a0, lambda_star = a0^3) from the closed-form radicals; the branch-switch
/// activity of the loop solution formulas.
std::pair<double, double> branch_constants();

// Verbatim evaluations of the published closed forms, for cross-checking.
double printed_t0(PresetGraph graph, double a);
double printed_x1_loop(double a);
double printed_x3_loop(double a);
double printed_x_rod(double a);

}  // namespace fhc
