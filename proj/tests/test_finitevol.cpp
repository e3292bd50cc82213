#include <doctest.h>

#include <cmath>
#include <set>

#include "fhc/finitevol.hpp"

using namespace fhc;
using doctest::Approx;

namespace {

// brute-force oracle over all 3^|V| assignments at n=1, k=2
int brute_force_count_n1_k2(const GraphSpec& g) {
    int count = 0;
    for (int root = 0; root < 3; ++root)
        for (int c0 = 0; c0 < 3; ++c0)
            for (int c1 = 0; c1 < 3; ++c1)
                for (int c2 = 0; c2 < 3; ++c2)
                    if (g.edge(root, c0) && g.edge(root, c1) && g.edge(root, c2))
                        ++count;
    return count;
}

}  // namespace

TEST_CASE("tree layout shape") {
    auto t = TreeLayout::build(3, 2);
    CHECK(t.level_size(0) == 1);
    CHECK(t.level_size(1) == 4);   // root has k+1 children
    CHECK(t.level_size(2) == 12);  // each has k children
    CHECK(t.vertex_count() == 17);
    CHECK(t.parent[0] == -1);
    for (int v = 1; v <= 4; ++v) CHECK(t.parent[v] == 0);
}

TEST_CASE("admissible counts at small sizes") {
    auto loop = GraphSpec::preset("loop");
    auto rod = GraphSpec::preset("rod");
    CHECK(count_admissible(loop, 2, 0) == 3);
    CHECK(count_admissible(rod, 2, 0) == 3);
    CHECK(count_admissible(loop, 2, 1) == 43);  // 3^3 + 2^3 + 2^3
    CHECK(count_admissible(rod, 2, 1) == 24);   // 3 * 2^3
    CHECK(count_admissible(loop, 2, 1) == brute_force_count_n1_k2(loop));
    CHECK(count_admissible(rod, 2, 1) == brute_force_count_n1_k2(rod));
}

TEST_CASE("enumeration matches the closed-form count") {
    for (auto name : {"loop", "rod"}) {
        auto g = GraphSpec::preset(name);
        for (int n : {0, 1, 2}) {
            auto configs = enumerate_admissible(g, 2, n);
            CHECK(configs.size() == count_admissible(g, 2, n));
            // all distinct, all admissible on every edge
            std::set<std::vector<std::uint8_t>> dedup(configs.begin(),
                                                      configs.end());
            CHECK(dedup.size() == configs.size());
            auto layout = TreeLayout::build(2, n);
            for (const auto& cfg : configs)
                for (int v = 1; v < layout.vertex_count(); ++v)
                    CHECK(g.edge(cfg[layout.parent[v]], cfg[v]));
        }
    }
}

TEST_CASE("finite measure normalization and uniform case") {
    auto rod = GraphSpec::preset("rod");
    // lambda=1, z=(1,1): every admissible configuration weighs the same
    auto fm = finite_measure(ModelParams(rod, 2, 1.0), 1.0, 1.0, 1);
    REQUIRE(fm.prob.size() == 24);
    for (double p : fm.prob) CHECK(p == Approx(1.0 / 24).epsilon(1e-13));

    auto loop = GraphSpec::preset("loop");
    auto fp = solve_symmetric(ModelParams(loop, 2, 1.0));
    auto fm2 = finite_measure(ModelParams(loop, 2, 1.0), fp.z1, fp.z2, 1);
    double total = 0;
    for (double p : fm2.prob) total += p;
    CHECK(total == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("consistency holds exactly at fixed points") {
    for (auto name : {"loop", "rod"}) {
        auto g = GraphSpec::preset(name);
        for (double lam : {0.5, 1.0, 2.0}) {
            ModelParams params(g, 2, lam);
            auto fp = solve_symmetric(params);
            CHECK(consistency_residual(params, fp.z1, fp.z2, 2) <= 1e-12);
        }
    }
}

TEST_CASE("consistency fails off the fixed point") {
    auto loop = GraphSpec::preset("loop");
    ModelParams params(loop, 2, 1.0);
    auto fp = solve_symmetric(params);
    CHECK(consistency_residual(params, fp.z1 * 1.1, fp.z2 * 1.1, 2) > 1e-6);

    auto rod = GraphSpec::preset("rod");
    ModelParams rp(rod, 2, 0.5);
    auto rfp = solve_symmetric(rp);
    CHECK(consistency_residual(rp, rfp.z1, rfp.z2, 2) <= 1e-12);
    CHECK(consistency_residual(rp, rfp.z1 * 1.1, rfp.z2 * 1.1, 2) > 1e-6);
}

TEST_CASE("unscaled boundary weights break consistency") {
    // the boundary factor must be (1, z1/lambda, z2/lambda); using
    // (1, z1, z2) is the same measure only when lambda = 1
    auto rod = GraphSpec::preset("rod");
    ModelParams params(rod, 2, 2.0);
    auto fp = solve_symmetric(params);
    // feed z*lambda so the internal division yields the unscaled vector
    CHECK(consistency_residual(params, fp.z1 * params.lambda(),
                               fp.z2 * params.lambda(), 2) > 1e-6);
}

TEST_CASE("root marginal: closed form, enumeration, stationarity") {
    auto rod = GraphSpec::preset("rod");
    auto pi = root_marginal(rod, 3, 1.0, 1.0, 1.0);
    CHECK(pi[0] == Approx(1.0 / 3).epsilon(1e-14));
    CHECK(pi[1] == Approx(1.0 / 3).epsilon(1e-14));
    CHECK(pi[2] == Approx(1.0 / 3).epsilon(1e-14));

    for (auto name : {"loop", "rod"}) {
        auto g = GraphSpec::preset(name);
        for (double lam : {0.5, 1.3}) {
            ModelParams params(g, 2, lam);
            auto fp = solve_symmetric(params);
            auto marg = root_marginal(g, 2, lam, fp.z1, fp.z2);
            double sum = marg[0] + marg[1] + marg[2];
            CHECK(sum == Approx(1.0).epsilon(1e-14));

            // n=1 finite measure gives the same root marginal
            auto fm = finite_measure(params, fp.z1, fp.z2, 1);
            std::array<double, 3> from_enum = {0, 0, 0};
            for (std::size_t c = 0; c < fm.configs.size(); ++c)
                from_enum[fm.configs[c][0]] += fm.prob[c];
            for (int i = 0; i < 3; ++i)
                CHECK(marg[i] == Approx(from_enum[i]).epsilon(1e-12));

            // stationarity and reversibility for the kernel
            auto kern = transition_kernel(g, fp.z1, fp.z2);
            for (int j = 0; j < 3; ++j) {
                double img = 0;
                for (int i = 0; i < 3; ++i) img += marg[i] * kern.P[i][j];
                CHECK(std::abs(img - marg[j]) <= 1e-12);
            }
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    CHECK(std::abs(marg[i] * kern.P[i][j] -
                                   marg[j] * kern.P[j][i]) <= 1e-12);
        }
    }
}

TEST_CASE("loop symmetric root marginal closed form") {
    // pi proportional to (1+2z, z(1+z), z(1+z)), using z = lambda((1+z)/(1+2z))^k
    auto loop = GraphSpec::preset("loop");
    ModelParams params(loop, 3, 2.0);
    auto fp = solve_symmetric(params);
    double z = fp.z1;
    auto pi = root_marginal(loop, 3, 2.0, z, z);
    double norm = (1 + 2 * z) + 2 * z * (1 + z);
    CHECK(pi[0] == Approx((1 + 2 * z) / norm).epsilon(1e-10));
    CHECK(pi[1] == Approx(z * (1 + z) / norm).epsilon(1e-10));
}

TEST_CASE("broadcast sampler determinism and shard independence") {
    auto rod = GraphSpec::preset("rod");
    auto kern = transition_kernel(rod, 1.0, 1.0);
    std::array<double, 3> pi = {1.0 / 3, 1.0 / 3, 1.0 / 3};
    auto a = broadcast_sample(kern, pi, 3, 4, 2000, 42, 1);
    auto b = broadcast_sample(kern, pi, 3, 4, 2000, 42, 4);
    CHECK(a.admissibility_violations == 0);
    for (std::size_t m = 0; m < a.level_marginals.size(); ++m) {
        for (int s = 0; s < 3; ++s)
            CHECK(a.level_marginals[m][s] == b.level_marginals[m][s]);
        CHECK(a.level_correlation[m] == b.level_correlation[m]);
    }
    auto c = broadcast_sample(kern, pi, 3, 4, 2000, 43, 4);
    CHECK(a.level_correlation[1] != c.level_correlation[1]);
}

TEST_CASE("broadcast sampler statistics at the rod symmetric point") {
    auto rod = GraphSpec::preset("rod");
    auto kern = transition_kernel(rod, 1.0, 1.0);
    std::array<double, 3> pi = {1.0 / 3, 1.0 / 3, 1.0 / 3};
    auto stats = broadcast_sample(kern, pi, 3, 6, 20000, 7);
    CHECK(stats.admissibility_violations == 0);
    for (auto& level : stats.level_marginals)
        for (int s = 0; s < 3; ++s)
            CHECK(std::abs(level[s] - 1.0 / 3) <= 0.02);
    CHECK(std::abs(stats.correlation_ratio - 0.5) <= 0.05);
}

TEST_CASE("size guards") {
    auto rod = GraphSpec::preset("rod");
    CHECK_THROWS_AS(enumerate_admissible(rod, 3, 8), SizeGuardExceeded);
    auto kern = transition_kernel(rod, 1.0, 1.0);
    std::array<double, 3> pi = {1.0 / 3, 1.0 / 3, 1.0 / 3};
    CHECK_THROWS_AS(broadcast_sample(kern, pi, 3, 40, 10, 1),
                    SizeGuardExceeded);
}
