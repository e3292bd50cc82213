#include "fhc/extremality.hpp"

#include <algorithm>
#include <cmath>

namespace fhc {

namespace {

double det3(const std::array<std::array<double, 3>, 3>& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

double char_poly_resid(const TransitionKernel& k, double s) {
    auto m = k.P;
    for (int i = 0; i < 3; ++i) m[i][i] -= s;
    return det3(m);
}

double ks_minus_one(const GraphSpec& graph, int k, double lambda) {
    auto fp = solve_symmetric(ModelParams(graph, k, lambda));
    auto sp = spectrum(transition_kernel(graph, fp.z1, fp.z2));
    return k * sp.s0 * sp.s0 - 1.0;
}

}  // namespace

TransitionKernel transition_kernel(const GraphSpec& graph, double z1, double z2) {
    if (!(z1 > 0.0) || !(z2 > 0.0))
        throw InvalidParameter("kernel requires z1, z2 > 0");
    const std::array<double, 3> zhat = {1.0, z1, z2};
    TransitionKernel out;
    out.graph = graph;
    out.z1 = z1;
    out.z2 = z2;
    for (int i = 0; i < 3; ++i) {
        double denom = 0;
        for (int l = 0; l < 3; ++l) denom += graph.a[i][l] * zhat[l];
        if (!(denom > 0.0))
            throw DegenerateDenominator("kernel row denominator is zero");
        for (int j = 0; j < 3; ++j) out.P[i][j] = graph.a[i][j] * zhat[j] / denom;
    }
    return out;
}

SpectralSummary spectrum(const TransitionKernel& kernel) {
    const auto& P = kernel.P;
    double trace = P[0][0] + P[1][1] + P[2][2];
    // sum of principal 2x2 minors
    double minors = P[0][0] * P[1][1] - P[0][1] * P[1][0] +
                    P[0][0] * P[2][2] - P[0][2] * P[2][0] +
                    P[1][1] * P[2][2] - P[1][2] * P[2][1];
    double det = det3(P);

    // char poly s^3 - trace s^2 + minors s - det, deflated by the root 1
    double b = 1.0 - trace;
    double c = minors + 1.0 - trace;
    double disc = b * b - 4 * c;
    if (disc < 0) {
        if (disc < -1e-12) throw SpectralError("complex kernel spectrum");
        disc = 0;
    }
    SpectralSummary out;
    out.s1 = (-b - std::sqrt(disc)) / 2;
    out.s2 = (-b + std::sqrt(disc)) / 2;
    out.s3 = 1.0;

    if (std::abs(out.s1 + out.s2 + out.s3 - trace) > 1e-10 ||
        std::abs(out.s1 * out.s2 * out.s3 - det) > 1e-10 ||
        std::abs(char_poly_resid(kernel, out.s1)) > 1e-10 ||
        std::abs(char_poly_resid(kernel, out.s2)) > 1e-10)
        throw SpectralError("spectral identity check failed");

    double a1 = std::abs(out.s1), a2 = std::abs(out.s2);
    out.s0 = std::max(a1, a2);
    out.tie = std::abs(a1 - a2) <= 1e-12;
    return out;
}

std::pair<double, double> kappa_gamma(const GraphSpec& graph, double z) {
    if (!(z > 0.0)) throw InvalidParameter("kappa_gamma requires z > 0");
    double kappa;
    if (graph.is_loop())
        kappa = z / (1.0 + z);
    else if (graph.is_rod())
        kappa = std::max(1.0 / (1.0 + z), z / (1.0 + z));
    else
        kappa = kappa_from_kernel(transition_kernel(graph, z, z));
    return {kappa, kappa};  // gamma = kappa, imported claim
}

double kappa_from_kernel(const TransitionKernel& kernel) {
    double best = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            double tv = 0;
            for (int l = 0; l < 3; ++l)
                tv += std::abs(kernel.P[i][l] - kernel.P[j][l]);
            best = std::max(best, 0.5 * tv);
        }
    return best;
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::ExtremeCertified: return "ExtremeCertified";
        case Verdict::NonExtremeCertified: return "NonExtremeCertified";
        case Verdict::Conflict: return "Conflict";
        default: return "Undetermined";
    }
}

ExtremalityReport classify(const ModelParams& params) {
    auto fp = solve_symmetric(params);
    auto kern = transition_kernel(params.graph, fp.z1, fp.z2);
    auto sp = spectrum(kern);
    auto [kappa, gamma] = kappa_gamma(params.graph, fp.z1);

    ExtremalityReport rep{fp, sp, kappa, gamma,
                          params.k * sp.s0 * sp.s0,
                          params.k * kappa * gamma,
                          Verdict::Undetermined};
    bool ks_non_extreme = rep.ks_value > 1.0;
    bool msw_extreme = rep.msw_value < 1.0;
    if (ks_non_extreme && !msw_extreme)
        rep.verdict = Verdict::NonExtremeCertified;
    else if (msw_extreme && !ks_non_extreme)
        rep.verdict = Verdict::ExtremeCertified;
    else if (ks_non_extreme && msw_extreme)
        rep.verdict = Verdict::Conflict;
    return rep;
}

std::vector<Threshold> thresholds(const GraphSpec& graph, int k) {
    const double lo = 1e-4, hi = 1e4;
    const int presieve = 2000;
    std::vector<Threshold> out;
    double prev_lambda = lo;
    double prev_val = ks_minus_one(graph, k, lo);
    for (int i = 1; i < presieve; ++i) {
        double lam = lo * std::pow(hi / lo, double(i) / (presieve - 1));
        double val = ks_minus_one(graph, k, lam);
        if ((prev_val < 0) != (val < 0)) {
            double a = prev_lambda, b = lam;
            double fa = prev_val;
            while (b - a > 1e-9) {
                double mid = 0.5 * (a + b);
                double fm = ks_minus_one(graph, k, mid);
                if ((fa < 0) == (fm < 0)) {
                    a = mid;
                    fa = fm;
                } else {
                    b = mid;
                }
            }
            out.push_back({0.5 * (a + b),
                           prev_val < 0 ? "k*s0^2 - 1 flips negative to positive"
                                        : "k*s0^2 - 1 flips positive to negative"});
        }
        prev_lambda = lam;
        prev_val = val;
    }
    return out;
}

std::vector<double> thresholds_closed_form(const GraphSpec& graph, int k) {
    if (k < 2) throw InvalidParameter("thresholds need k >= 2");
    std::vector<double> out;
    double rk = std::sqrt(double(k));
    if (graph.is_rod()) {
        double z_low = rk - 1.0;        // |s1| = 1/(1+z) branch, valid for z < 1
        double z_high = 1.0 / (rk - 1.0);  // s2 = z/(1+z) branch, valid for z > 1
        if (z_low > 0 && z_low < 1) out.push_back(lambda_of_z(graph, k, z_low));
        if (z_high > 1) out.push_back(lambda_of_z(graph, k, z_high));
    } else if (graph.is_loop()) {
        // only the s2 = z/(1+z) branch can reach 1/sqrt(k) (needs z > 1/2)
        double z = 1.0 / (rk - 1.0);
        if (z > 0.5) out.push_back(lambda_of_z(graph, k, z));
    } else {
        throw InvalidParameter("closed-form thresholds exist only for presets");
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace fhc
