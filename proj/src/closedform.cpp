#include "fhc/closedform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fhc {

namespace {

constexpr double kPi = 3.14159265358979323846;

double polish_quartic(const QuarticCoeffs& q, double x) {
    for (int it = 0; it < 30; ++it) {
        double d = q.deriv(x);
        if (d == 0.0) break;
        double step = q.eval(x) / d;
        x -= step;
        if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(x))) break;
    }
    return x;
}

}  // namespace

double QuarticCoeffs::max_abs_coeff() const {
    return std::max({1.0, std::abs(b), std::abs(c), std::abs(d), std::abs(e)});
}

PresetGraph preset_of(const GraphSpec& graph) {
    if (graph.is_loop()) return PresetGraph::Loop;
    if (graph.is_rod()) return PresetGraph::Rod;
    throw InvalidParameter("closed forms exist only for the loop/rod presets");
}

QuarticCoeffs quartic_for(PresetGraph graph, double a) {
    if (!(a > 0.0)) throw InvalidParameter("a must be > 0");
    if (graph == PresetGraph::Loop) return {-a / 2, 0.0, 0.5, -a / 2};
    return {-a / 2, 0.0, 0.0, -a / 2};
}

std::array<double, 3> depressed_coeffs(const QuarticCoeffs& q) {
    double b = q.b, c = q.c, d = q.d, e = q.e;
    double p = c - 3 * b * b / 8;
    double qq = d - b * c / 2 + b * b * b / 8;
    double r = e - b * d / 4 + b * b * c / 16 - 3 * b * b * b * b / 256;
    return {p, qq, r};
}

std::vector<double> cubic_real_roots(double b, double c, double d) {
    // depress: t = u - b/3
    double p = c - b * b / 3;
    double q = 2 * b * b * b / 27 - b * c / 3 + d;
    std::vector<double> roots;
    double disc = q * q / 4 + p * p * p / 27;
    if (disc > 0) {
        double s = std::sqrt(disc);
        roots.push_back(std::cbrt(-q / 2 + s) + std::cbrt(-q / 2 - s));
    } else if (p == 0.0) {
        roots.push_back(std::cbrt(-q));
    } else {
        double m = 2 * std::sqrt(-p / 3);
        double arg = std::clamp(3 * q / (p * m), -1.0, 1.0);
        double theta = std::acos(arg) / 3;
        for (int k = 0; k < 3; ++k)
            roots.push_back(m * std::cos(theta - 2 * kPi * k / 3));
    }
    for (double& u : roots) {
        double t = u - b / 3;
        for (int it = 0; it < 20; ++it) {  // Newton polish
            double f = ((t + b) * t + c) * t + d;
            double fp = (3 * t + 2 * b) * t + c;
            if (fp == 0.0) break;
            double step = f / fp;
            t -= step;
            if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(t))) break;
        }
        u = t;
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

std::vector<double> ferrari_real_roots(const QuarticCoeffs& q) {
    auto [p, qq, r] = depressed_coeffs(q);
    double scale = q.max_abs_coeff();
    std::vector<double> candidates;

    if (std::abs(qq) <= 1e-14 * scale) {
        // biquadratic y^4 + p y^2 + r
        double disc = p * p / 4 - r;
        if (disc >= 0) {
            for (double w : {-p / 2 + std::sqrt(disc), -p / 2 - std::sqrt(disc)}) {
                if (w >= -1e-14 * scale) {
                    double y = std::sqrt(std::max(0.0, w));
                    candidates.push_back(y);
                    candidates.push_back(-y);
                }
            }
        }
    } else {
        // resolvent 8t^3 + 8p t^2 + (2p^2 - 8r) t - q^2 = 0; the largest real
        // root is positive (value at 0 is -q^2 < 0)
        auto ts = cubic_real_roots(p, (2 * p * p - 8 * r) / 8, -qq * qq / 8);
        double t = ts.back();
        if (t > 0) {
            double s = std::sqrt(2 * t);
            for (int sgn : {+1, -1}) {
                // y^2 - sgn s y + (p/2 + t + sgn q/(2s)) = 0
                double cc = p / 2 + t + sgn * qq / (2 * s);
                double disc = 2 * t - 4 * cc;
                if (disc >= 0) {
                    double sq = std::sqrt(disc);
                    candidates.push_back((sgn * s + sq) / 2);
                    candidates.push_back((sgn * s - sq) / 2);
                }
            }
        }
    }

    std::vector<double> roots;
    double tol = 1e-9 * (1.0 + scale);
    for (double y : candidates) {
        double x = polish_quartic(q, y - q.b / 4);
        if (std::abs(q.eval(x)) > tol) continue;
        bool dup = false;
        for (double seen : roots)
            if (std::abs(x - seen) <= 1e-8 * std::max(1.0, std::abs(seen)))
                dup = true;
        if (!dup) roots.push_back(x);
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

double resolvent_cubic_eval(PresetGraph graph, double a, double t) {
    double a2 = a * a, a3 = a2 * a, a4 = a2 * a2;
    double lin, con;
    if (graph == PresetGraph::Loop) {
        lin = 3.0 / 128 * a4 + 3.5 * a;
        double half = 0.5 - a3 / 64;
        con = -half * half;
    } else {
        lin = 3.0 / 128 * a4 + 4 * a;
        con = -a3 * a3 / 4096;
    }
    return ((8 * t - 0.75 * a2) * t + lin) * t + con;
}

double printed_t0(PresetGraph graph, double a) {
    double a2 = a * a, a3 = a2 * a, a6 = a3 * a3;
    double C, coef;
    if (graph == PresetGraph::Loop) {
        C = -108 * a3 + 216 + 12 * std::sqrt(81 * a6 + 3792 * a3 + 324);
        coef = 3.5;
    } else {
        C = -108 * a3 + 12 * std::sqrt(81 * a6 + 6144 * a3);
        coef = 4.0;
    }
    double cb = std::cbrt(C);
    return cb / 24 - coef * a / cb + a2 / 32;
}

ResolventRoot resolvent_t0(PresetGraph graph, double a) {
    if (!(a > 0.0)) throw InvalidParameter("a must be > 0");
    double a2 = a * a, a3 = a2 * a, a4 = a2 * a2;
    double lin = (graph == PresetGraph::Loop) ? 3.0 / 128 * a4 + 3.5 * a
                                              : 3.0 / 128 * a4 + 4 * a;
    double con;
    if (graph == PresetGraph::Loop) {
        double half = 0.5 - a3 / 64;
        con = -half * half;
    } else {
        con = -a3 * a3 / 4096;
    }
    // monic form of 8t^3 - (3/4)a^2 t^2 + lin t + con
    auto roots = cubic_real_roots(-0.75 * a2 / 8, lin / 8, con / 8);
    if (roots.empty() || roots.back() <= -1e-12)
        throw NoPositiveResolventRoot("resolvent cubic has no positive root");

    ResolventRoot out;
    out.a = a;
    out.printed_value = printed_t0(graph, a);
    out.printed_residual = resolvent_cubic_eval(graph, a, out.printed_value);
    double best = roots.back();
    for (double t : roots)
        if (std::abs(t - out.printed_value) < std::abs(best - out.printed_value))
            best = t;
    out.t0 = best;
    out.residual = resolvent_cubic_eval(graph, a, out.t0);
    return out;
}

double bisection_positive_root(PresetGraph graph, double a) {
    QuarticCoeffs q = quartic_for(graph, a);
    double lo = 0.0, hi = std::max(1.0, a);
    int guard = 0;
    while (q.eval(hi) <= 0.0) {
        hi *= 2.0;
        if (++guard > 200) throw NonConvergence("quartic bisection bracket");
    }
    for (int it = 0; it < 200 && (hi - lo) > 1e-16 * std::max(1.0, hi); ++it) {
        double mid = 0.5 * (lo + hi);
        if (q.eval(mid) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return polish_quartic(q, 0.5 * (lo + hi));
}

PositiveRoot positive_root(PresetGraph graph, double a) {
    QuarticCoeffs quartic = quartic_for(graph, a);
    double bis = bisection_positive_root(graph, a);
    double tol = 1e-9 * (1.0 + quartic.max_abs_coeff());

    PositiveRoot out;
    double t0 = resolvent_t0(graph, a).t0;
    if (t0 > 0) {
        auto [p, qq, r] = depressed_coeffs(quartic);
        double s = std::sqrt(2 * t0);
        double best_resid = std::numeric_limits<double>::infinity();
        for (int outer : {+1, -1}) {
            double cc = p / 2 + t0 + outer * qq / (2 * s);
            double disc = 2 * t0 - 4 * cc;
            if (disc < 0) continue;  // complex pair, skipped
            for (int inner : {+1, -1}) {
                double x = (outer * s + inner * std::sqrt(disc)) / 2 - quartic.b / 4;
                if (!(x > 0)) continue;
                double resid = std::abs(quartic.eval(x));
                if (resid <= tol && resid < best_resid) {
                    best_resid = resid;
                    out.x = x;
                    out.outer_sign = outer;
                    out.inner_sign = inner;
                }
            }
        }
        if (best_resid < std::numeric_limits<double>::infinity()) {
            out.quartic_residual = best_resid;
            return out;
        }
    }
    // no branch reproduced the root; fall back to the bisection value
    out.x = bis;
    out.quartic_residual = std::abs(quartic.eval(bis));
    out.from_bisection_fallback = true;
    return out;
}

std::pair<double, double> branch_constants() {
    double s = -405.0 + 51.0 * std::sqrt(177.0);
    double a0 = std::cbrt(std::pow(s, 5)) / 29988.0 +
                331.0 / 4998.0 * std::cbrt(s * s);
    return {a0, a0 * a0 * a0};
}

double printed_x1_loop(double a) {
    double t = printed_t0(PresetGraph::Loop, a);
    double inner =
        std::sqrt(2 / t * (0.5 - a * a * a / 64) + 3 * a * a / 16 + a / 8);
    return 0.5 * std::sqrt(2 * t) + 0.5 * std::sqrt(-2 * t + inner);
}

double printed_x3_loop(double a) {
    double t = printed_t0(PresetGraph::Loop, a);
    double inner =
        std::sqrt(2 / t * (0.5 - a * a * a / 64) + 3 * a * a / 16 + a / 8);
    return -0.5 * std::sqrt(2 * t) + 0.5 * std::sqrt(-2 * t - inner);
}

double printed_x_rod(double a) {
    double t = printed_t0(PresetGraph::Rod, a);
    double inner = a * a * a / 64 * std::sqrt(2 / t + 3 * a * a / 16);
    return 0.5 * std::sqrt(2 * t) + 0.5 * std::sqrt(-2 * t + inner + a / 8);
}

}  // namespace fhc
