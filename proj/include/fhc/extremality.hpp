#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "fhc/boundary.hpp"
#include "fhc/model.hpp"

namespace fhc {

/// Row-stochastic kernel of the tree-indexed Markov chain defined by a
/// boundary law: P_ij = a_ij * zhat_j / sum_l a_il * zhat_l, zhat = (1,z1,z2).
struct TransitionKernel {
    std::array<std::array<double, 3>, 3> P{};
    GraphSpec graph;
    double z1 = 0, z2 = 0;
};

TransitionKernel transition_kernel(const GraphSpec& graph, double z1, double z2);

struct SpectralSummary {
    double s1 = 0, s2 = 0;  // s1 <= s2
    double s3 = 1.0;
    double s0 = 0;  // max(|s1|, |s2|)
    bool tie = false;
};

/// Eigenvalues from the characteristic polynomial, deflated by the known
/// root 1; trace/determinant identities are enforced.
SpectralSummary spectrum(const TransitionKernel& kernel);

/// Dependence coefficients at a symmetric fixed point z1 = z2 = z.
/// Loop: kappa = z/(1+z); rod: kappa = max(1/(1+z), z/(1+z)); gamma = kappa.
std::pair<double, double> kappa_gamma(const GraphSpec& graph, double z);

/// The definition computed directly from the kernel rows:
/// (1/2) max_{i,j} sum_l |P_il - P_jl|.
double kappa_from_kernel(const TransitionKernel& kernel);

enum class Verdict { ExtremeCertified, NonExtremeCertified, Undetermined, Conflict };

const char* to_string(Verdict v);

struct ExtremalityReport {
    BoundaryFixedPoint fixed_point;
    SpectralSummary spectrum;
    double kappa = 0, gamma = 0;
    double ks_value = 0;   // k * s0^2  (Kesten-Stigum; > 1 => non-extreme)
    double msw_value = 0;  // k * kappa * gamma (< 1 => extreme)
    Verdict verdict = Verdict::Undetermined;
};

/// Classify the unique symmetric translation-invariant measure.
ExtremalityReport classify(const ModelParams& params);

struct Threshold {
    double lambda = 0;
    std::string condition;  // the sign condition that flips here
};

/// Activities where k*s0(z(lambda))^2 - 1 changes sign along the symmetric
/// branch, by log presieve + bisection in lambda.
std::vector<Threshold> thresholds(const GraphSpec& graph, int k);

/// Same thresholds through the closed-form critical z mapped by lambda_of_z
/// (presets, k in {2,3}; best effort otherwise).
std::vector<double> thresholds_closed_form(const GraphSpec& graph, int k);

}  // namespace fhc
