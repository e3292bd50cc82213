#include "fhc/finitevol.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <thread>

#include "fhc/rng.hpp"

namespace fhc {

namespace {

constexpr std::uint64_t kEnumerationGuard = 10'000'000;

// admissible-count transfer: subtree with root spin j and d full levels below
std::array<double, 3> subtree_counts(const GraphSpec& g, int k, int d) {
    std::array<double, 3> m = {1, 1, 1};
    for (int level = 0; level < d; ++level) {
        std::array<double, 3> next;
        for (int j = 0; j < 3; ++j) {
            double s = 0;
            for (int l = 0; l < 3; ++l) s += g.a[j][l] * m[l];
            next[j] = std::pow(s, k);
        }
        m = next;
    }
    return m;
}

std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 sm(seed ^ (index * 0x9e3779b97f4a7c15ULL));
    return sm.next();
}

struct ShardAccum {
    std::uint64_t violations = 0;
    std::vector<std::array<std::uint64_t, 3>> counts;  // per level, per spin
    std::vector<std::int64_t> corr;  // sum over samples of f(root)*sum_level f

    explicit ShardAccum(int depth)
        : counts(depth + 1, {0, 0, 0}), corr(depth + 1, 0) {}

    void merge(const ShardAccum& o) {
        violations += o.violations;
        for (std::size_t m = 0; m < counts.size(); ++m) {
            for (int s = 0; s < 3; ++s) counts[m][s] += o.counts[m][s];
            corr[m] += o.corr[m];
        }
    }
};

}  // namespace

TreeLayout TreeLayout::build(int k, int n) {
    if (k < 1 || n < 0) throw InvalidParameter("TreeLayout: k >= 1, n >= 0");
    TreeLayout t;
    t.k = k;
    t.n = n;
    t.parent.push_back(-1);
    t.level_range.push_back({0, 1});
    int first = 0, last = 1;
    for (int m = 1; m <= n; ++m) {
        int next_first = last;
        for (int v = first; v < last; ++v) {
            int children = (m == 1) ? k + 1 : k;
            for (int c = 0; c < children; ++c) t.parent.push_back(v);
        }
        first = next_first;
        last = static_cast<int>(t.parent.size());
        t.level_range.push_back({first, last});
    }
    return t;
}

namespace {

double count_admissible_d(const GraphSpec& graph, int k, int n) {
    if (n == 0) return 3;
    auto m = subtree_counts(graph, k, n - 1);
    double total = 0;
    for (int i = 0; i < 3; ++i) {
        double s = 0;
        for (int j = 0; j < 3; ++j) s += graph.a[i][j] * m[j];
        total += std::pow(s, k + 1);
    }
    return total;
}

}  // namespace

std::uint64_t count_admissible(const GraphSpec& graph, int k, int n) {
    double total = count_admissible_d(graph, k, n);
    if (total > 9e18)
        throw SizeGuardExceeded("admissible count exceeds 64-bit range");
    return static_cast<std::uint64_t>(std::llround(total));
}

std::vector<std::vector<std::uint8_t>> enumerate_admissible(
    const GraphSpec& graph, int k, int n) {
    if (count_admissible_d(graph, k, n) > double(kEnumerationGuard))
        throw SizeGuardExceeded("admissible configuration count exceeds 1e7");
    auto layout = TreeLayout::build(k, n);
    const int nv = layout.vertex_count();
    std::vector<std::vector<std::uint8_t>> out;
    std::vector<std::uint8_t> cur(nv, 0);

    // vertices are level-ordered, so parent spins are set before children
    auto rec = [&](auto&& self, int v) -> void {
        if (v == nv) {
            out.push_back(cur);
            return;
        }
        int p = layout.parent[v];
        for (std::uint8_t s = 0; s < 3; ++s) {
            if (p >= 0 && !graph.edge(cur[p], s)) continue;
            cur[v] = s;
            self(self, v + 1);
        }
    };
    rec(rec, 0);
    return out;
}

FiniteMeasure finite_measure(const ModelParams& params, double z1, double z2,
                             int n) {
    FiniteMeasure fm;
    fm.layout = TreeLayout::build(params.k, n);
    fm.configs = enumerate_admissible(params.graph, params.k, n);
    const double lam = params.lambda();
    const std::array<double, 3> w = {1.0, z1 / lam, z2 / lam};

    auto [first, last] = fm.layout.level_range[n];
    fm.prob.resize(fm.configs.size());
    double total = 0;
    for (std::size_t c = 0; c < fm.configs.size(); ++c) {
        const auto& cfg = fm.configs[c];
        int occupied = 0;
        for (std::uint8_t s : cfg) occupied += (s >= 1);
        double weight = std::pow(lam, occupied);
        for (int v = first; v < last; ++v) weight *= w[cfg[v]];
        fm.prob[c] = weight;
        total += weight;
    }
    for (double& p : fm.prob) p /= total;
    fm.log_normalizer = std::log(total);
    return fm;
}

double consistency_residual(const ModelParams& params, double z1, double z2,
                            int n) {
    if (n < 1) throw InvalidParameter("consistency needs n >= 1");
    auto fine = finite_measure(params, z1, z2, n);
    auto coarse = finite_measure(params, z1, z2, n - 1);

    const int inner = coarse.layout.vertex_count();
    std::map<std::vector<std::uint8_t>, double> marginal;
    for (std::size_t c = 0; c < fine.configs.size(); ++c) {
        std::vector<std::uint8_t> key(fine.configs[c].begin(),
                                      fine.configs[c].begin() + inner);
        marginal[key] += fine.prob[c];
    }

    double worst = 0;
    for (std::size_t c = 0; c < coarse.configs.size(); ++c) {
        auto it = marginal.find(coarse.configs[c]);
        double summed = (it == marginal.end()) ? 0.0 : it->second;
        worst = std::max(worst, std::abs(summed - coarse.prob[c]));
    }
    return worst;
}

std::array<double, 3> root_marginal(const GraphSpec& graph, int k,
                                    double lambda, double z1, double z2) {
    const std::array<double, 3> zhat = {1.0, z1, z2};
    const std::array<double, 3> act = {1.0, lambda, lambda};
    std::array<double, 3> pi;
    double total = 0;
    for (int i = 0; i < 3; ++i) {
        double s = 0;
        for (int j = 0; j < 3; ++j) s += graph.a[i][j] * zhat[j];
        pi[i] = act[i] * std::pow(s, k + 1);
        total += pi[i];
    }
    for (double& p : pi) p /= total;
    return pi;
}

SampleStats broadcast_sample(const TransitionKernel& kernel,
                             const std::array<double, 3>& pi, int k, int depth,
                             std::uint64_t samples, std::uint64_t seed,
                             int threads) {
    std::vector<std::uint64_t> level_size(depth + 1);
    std::uint64_t per_sample = 1;
    level_size[0] = 1;
    for (int m = 1; m <= depth; ++m) {
        level_size[m] = (m == 1) ? std::uint64_t(k) + 1 : level_size[m - 1] * k;
        per_sample += level_size[m];
        if (per_sample > kEnumerationGuard)
            throw SizeGuardExceeded("per-sample tree exceeds the memory guard");
    }

    // cumulative rows for inverse-CDF draws
    std::array<std::array<double, 2>, 3> row_cum;
    for (int i = 0; i < 3; ++i) {
        row_cum[i][0] = kernel.P[i][0];
        row_cum[i][1] = kernel.P[i][0] + kernel.P[i][1];
    }
    const double pi_cum0 = pi[0], pi_cum1 = pi[0] + pi[1];
    static constexpr std::int8_t f_of[3] = {0, 1, -1};

    int nthreads = threads > 0 ? threads
                               : std::max(1u, std::thread::hardware_concurrency());
    nthreads = static_cast<int>(
        std::min<std::uint64_t>(nthreads, std::max<std::uint64_t>(samples, 1)));

    auto run_shard = [&](std::uint64_t begin, std::uint64_t end,
                         ShardAccum& acc) {
        std::uint64_t buf = std::max<std::uint64_t>(level_size[depth], 1);
        std::vector<std::uint8_t> cur(buf), nxt(buf);
        for (std::uint64_t idx = begin; idx < end; ++idx) {
            Xoshiro256pp rng(derive_stream_seed(seed, idx));
            double u = rng.uniform();
            int root = u < pi_cum0 ? 0 : (u < pi_cum1 ? 1 : 2);
            int f_root = f_of[root];
            acc.counts[0][root]++;
            acc.corr[0] += f_root * f_root;
            cur[0] = static_cast<std::uint8_t>(root);
            std::uint64_t cur_n = 1;
            for (int m = 1; m <= depth; ++m) {
                int children = (m == 1) ? k + 1 : k;
                std::uint64_t out_n = 0;
                std::int64_t f_sum = 0;
                for (std::uint64_t p = 0; p < cur_n; ++p) {
                    int sp = cur[p];
                    for (int c = 0; c < children; ++c) {
                        double v = rng.uniform();
                        int s = v < row_cum[sp][0] ? 0
                                                   : (v < row_cum[sp][1] ? 1 : 2);
                        acc.violations += !kernel.graph.a[sp][s];
                        acc.counts[m][s]++;
                        f_sum += f_of[s];
                        nxt[out_n++] = static_cast<std::uint8_t>(s);
                    }
                }
                acc.corr[m] += f_root * f_sum;
                std::swap(cur, nxt);
                cur_n = out_n;
            }
        }
    };

    std::vector<ShardAccum> accs(nthreads, ShardAccum(depth));
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) {
        std::uint64_t begin = samples * t / nthreads;
        std::uint64_t end = samples * (t + 1) / nthreads;
        pool.emplace_back(run_shard, begin, end, std::ref(accs[t]));
    }
    for (auto& th : pool) th.join();
    for (int t = 1; t < nthreads; ++t) accs[0].merge(accs[t]);
    const ShardAccum& total = accs[0];

    SampleStats stats;
    stats.samples = samples;
    stats.admissibility_violations = total.violations;
    stats.level_marginals.resize(depth + 1);
    stats.level_correlation.resize(depth + 1);
    for (int m = 0; m <= depth; ++m) {
        double denom = double(samples) * double(level_size[m]);
        for (int s = 0; s < 3; ++s)
            stats.level_marginals[m][s] = total.counts[m][s] / denom;
        stats.level_correlation[m] = total.corr[m] / denom;
    }
    int ratios = std::min(4, depth);
    double acc_ratio = 0;
    for (int m = 0; m < ratios; ++m)
        acc_ratio += stats.level_correlation[m + 1] / stats.level_correlation[m];
    stats.correlation_ratio = ratios > 0 ? acc_ratio / ratios : 0.0;
    return stats;
}

}  // namespace fhc
