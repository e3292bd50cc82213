#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "fhc/boundary.hpp"
#include "fhc/extremality.hpp"
#include "fhc/model.hpp"

namespace fhc {

/// Rooted Cayley tree of depth n: the root has k+1 children, every other
/// internal vertex has k. Vertices are indexed level by level, root first.
struct TreeLayout {
    int k = 0;
    int n = 0;
    std::vector<int> parent;                      // parent[0] == -1
    std::vector<std::pair<int, int>> level_range; // [first, last) per level

    static TreeLayout build(int k, int n);
    int vertex_count() const { return static_cast<int>(parent.size()); }
    int level_size(int m) const {
        return level_range[m].second - level_range[m].first;
    }
};

/// Number of admissible spin assignments on the depth-n tree, by the
/// per-vertex transfer recursion (no enumeration).
std::uint64_t count_admissible(const GraphSpec& graph, int k, int n);

/// All admissible configurations, as per-vertex spin vectors in TreeLayout
/// indexing. Guarded at 1e7 states.
std::vector<std::vector<std::uint8_t>> enumerate_admissible(
    const GraphSpec& graph, int k, int n);

struct FiniteMeasure {
    TreeLayout layout;
    std::vector<std::vector<std::uint8_t>> configs;
    std::vector<double> prob;
    double log_normalizer = 0;
};

/// The finite-volume measure: weight lambda^{#occupied} times the boundary
/// factor prod_{x in W_n} w_{spin(x)} with w = (1, z1/lambda, z2/lambda).
FiniteMeasure finite_measure(const ModelParams& params, double z1, double z2,
                             int n);

/// Max over configurations on V_{n-1} of the marginalization mismatch
/// between the depth-n and depth-(n-1) measures. Zero (to rounding) exactly
/// at fixed points of the tree recursion.
double consistency_residual(const ModelParams& params, double z1, double z2,
                            int n);

/// Root marginal pi_i proportional to lambda_i * (sum_j a_ij zhat_j)^(k+1),
/// zhat = (1, z1, z2), lambda = (1, lambda, lambda).
std::array<double, 3> root_marginal(const GraphSpec& graph, int k,
                                    double lambda, double z1, double z2);

struct SampleStats {
    std::uint64_t samples = 0;
    std::uint64_t admissibility_violations = 0;
    // per level 0..depth
    std::vector<std::array<double, 3>> level_marginals;
    // E[f(root) f(x)] averaged over level x, f = 1(spin=1) - 1(spin=2)
    std::vector<double> level_correlation;
    // mean of c_{m+1}/c_m over the first few levels
    double correlation_ratio = 0;
};

/// Seeded Monte Carlo broadcast along the rooted tree: root from pi, each
/// child from its parent's kernel row. Per-sample streams are derived from
/// (seed, sample index), so results are independent of how samples are
/// sharded across threads.
SampleStats broadcast_sample(const TransitionKernel& kernel,
                             const std::array<double, 3>& pi, int k, int depth,
                             std::uint64_t samples, std::uint64_t seed,
                             int threads = 0);

}  // namespace fhc
