#include "fhc/boundary.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace fhc {

namespace {

std::array<double, 3> row_dots(const GraphSpec& g, double z1, double z2) {
    std::array<double, 3> d;
    for (int i = 0; i < 3; ++i)
        d[i] = g.a[i][0] + g.a[i][1] * z1 + g.a[i][2] * z2;
    return d;
}

double scaled_residual(const ModelParams& p, double z1, double z2) {
    auto [r1, r2] = rhs(p, z1, z2);
    return std::max(std::abs(z1 - r1) / std::max(1.0, z1),
                    std::abs(z2 - r2) / std::max(1.0, z2));
}

// g(z) = lambda * (D1(z,z)/D0(z,z))^k
double sym_map(const ModelParams& p, double z) {
    auto d = row_dots(p.graph, z, z);
    if (d[0] <= 0.0) throw DegenerateDenominator("D0 vanished in symmetric map");
    return p.lambda() * std::pow(d[1] / d[0], p.k);
}

// d/dz of sym_map
double sym_map_deriv(const ModelParams& p, double z) {
    const auto& a = p.graph.a;
    auto d = row_dots(p.graph, z, z);
    double d0p = a[0][1] + a[0][2];
    double d1p = a[1][1] + a[1][2];
    double ratio = d[1] / d[0];
    return p.lambda() * p.k * std::pow(ratio, p.k - 1) *
           (d1p * d[0] - d[1] * d0p) / (d[0] * d[0]);
}

// 2x2 Newton on F(z) = z - rhs(z); returns true if it settled.
bool newton_polish_2d(const ModelParams& p, double& z1, double& z2) {
    const auto& a = p.graph.a;
    for (int it = 0; it < 50; ++it) {
        auto d = row_dots(p.graph, z1, z2);
        if (d[0] <= 0.0) return false;
        double lam = p.lambda();
        double r1 = lam * std::pow(d[1] / d[0], p.k);
        double r2 = lam * std::pow(d[2] / d[0], p.k);
        double f1 = z1 - r1, f2 = z2 - r2;
        // partials of r_i
        double c1 = lam * p.k * std::pow(d[1] / d[0], p.k - 1) / (d[0] * d[0]);
        double c2 = lam * p.k * std::pow(d[2] / d[0], p.k - 1) / (d[0] * d[0]);
        double j11 = 1.0 - c1 * (a[1][1] * d[0] - d[1] * a[0][1]);
        double j12 = -c1 * (a[1][2] * d[0] - d[1] * a[0][2]);
        double j21 = -c2 * (a[2][1] * d[0] - d[2] * a[0][1]);
        double j22 = 1.0 - c2 * (a[2][2] * d[0] - d[2] * a[0][2]);
        double det = j11 * j22 - j12 * j21;
        if (det == 0.0) return false;
        double s1 = (f1 * j22 - f2 * j12) / det;
        double s2 = (f2 * j11 - f1 * j21) / det;
        double n1 = z1 - s1, n2 = z2 - s2;
        if (n1 <= 0.0 || n2 <= 0.0) return false;
        bool done = std::abs(s1) <= 1e-15 * std::max(1.0, z1) &&
                    std::abs(s2) <= 1e-15 * std::max(1.0, z2);
        z1 = n1;
        z2 = n2;
        if (done) return true;
    }
    return scaled_residual(p, z1, z2) <= 1e-10;
}

}  // namespace

std::pair<double, double> rhs(const ModelParams& params, double z1, double z2) {
    if (!(z1 > 0.0) || !(z2 > 0.0))
        throw InvalidParameter("boundary law components must be > 0");
    auto d = row_dots(params.graph, z1, z2);
    if (d[0] <= 0.0) throw DegenerateDenominator("D0 = 0 in tree recursion");
    double lam = params.lambda();
    return {lam * std::pow(d[1] / d[0], params.k),
            lam * std::pow(d[2] / d[0], params.k)};
}

BoundaryFixedPoint solve_symmetric(const ModelParams& params) {
    const double lam = params.lambda();
    auto f = [&](double z) { return sym_map(params, z) - z; };

    // Loop-type graphs (a00 = 1): rhs lands in (lam/2^k, lam).
    // Rod-type (a00 = 0): rhs blows up as z -> 0+, so a tiny lower end is safe.
    double lo, hi;
    if (params.graph.a[0][0] != 0) {
        lo = lam * std::pow(2.0, -params.k) * 0.9;
        hi = lam * 1.1;
    } else {
        lo = 1e-12;
        hi = 1.0;
    }
    int expansions = 0;
    while (f(lo) <= 0.0) {
        lo *= 0.5;
        if (++expansions > 200)
            throw NonConvergence("symmetric solve: no lower bracket");
    }
    expansions = 0;
    while (f(hi) >= 0.0) {
        hi *= 2.0;
        if (++expansions > 200)
            throw NonConvergence("symmetric solve: no upper bracket");
    }

    for (int it = 0; it < 200 && (hi - lo) > 1e-16 * std::max(1.0, hi); ++it) {
        double mid = 0.5 * (lo + hi);
        if (f(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    double z = 0.5 * (lo + hi);

    // Newton polish on z - g(z)
    for (int it = 0; it < 8; ++it) {
        double step = (z - sym_map(params, z)) / (1.0 - sym_map_deriv(params, z));
        double zn = z - step;
        if (!(zn > 0.0)) break;
        z = zn;
        if (std::abs(step) <= 1e-16 * std::max(1.0, z)) break;
    }

    double res = scaled_residual(params, z, z);
    if (!(res <= 1e-12))
        throw NonConvergence("symmetric solve residual too large");
    return {z, z, params, res};
}

double lambda_of_z(const GraphSpec& graph, int k, double z) {
    if (!(z > 0.0)) throw InvalidParameter("z must be > 0");
    auto d = row_dots(graph, z, z);
    if (d[1] <= 0.0) throw DegenerateDenominator("D1 = 0 in lambda_of_z");
    return z * std::pow(d[0] / d[1], k);
}

double lambda_cr(const GraphSpec& graph, int k) {
    if (k < 2) throw InvalidParameter("lambda_cr requires k >= 2");
    if (graph.is_loop())
        return std::pow((k + 1.0) / k, k) / (k - 1.0);
    if (graph.is_rod())
        return std::pow(2.0 / k, k) / (k - 1.0);
    throw InvalidParameter("lambda_cr is only known for the loop/rod presets");
}

SolutionSet solve_all_ti(const ModelParams& params) {
    const double lam = params.lambda();
    std::vector<std::pair<double, double>> found;

    auto try_add = [&](double z1, double z2) {
        if (!(z1 > 0.0) || !(z2 > 0.0)) return;
        if (scaled_residual(params, z1, z2) > 1e-10) return;
        for (auto& [w1, w2] : found) {
            if (std::abs(z1 - w1) <= 1e-8 * std::max(1.0, w1) &&
                std::abs(z2 - w2) <= 1e-8 * std::max(1.0, w2))
                return;
        }
        found.emplace_back(z1, z2);
    };

    auto sym = solve_symmetric(params);
    try_add(sym.z1, sym.z2);

    for (double M : {10.0, 100.0}) {
        for (auto seed : {std::pair{lam * M, lam / M}, std::pair{lam / M, lam * M}}) {
            double z1 = seed.first, z2 = seed.second;
            bool settled = false;
            for (int it = 0; it < 10000; ++it) {
                auto [r1, r2] = rhs(params, z1, z2);
                double n1 = 0.5 * z1 + 0.5 * r1;  // damping 0.5
                double n2 = 0.5 * z2 + 0.5 * r2;
                bool small = std::abs(n1 - z1) <= 1e-13 * std::max(1.0, z1) &&
                             std::abs(n2 - z2) <= 1e-13 * std::max(1.0, z2);
                z1 = n1;
                z2 = n2;
                if (small) {
                    settled = true;
                    break;
                }
            }
            if (!settled) continue;  // reported per-seed, not fatal
            if (newton_polish_2d(params, z1, z2)) {
                // near-symmetric iterates collapse onto the symmetric root
                if (std::abs(z1 - z2) <= 1e-8 * std::max(1.0, z1))
                    try_add(sym.z1, sym.z2);
                else
                    try_add(z1, z2);
            }
        }
    }

    // close under the coordinate swap (graph is 1<->2 symmetric for presets)
    if (params.graph.spin_symmetric()) {
        for (std::size_t i = 0, n = found.size(); i < n; ++i)
            try_add(found[i].second, found[i].first);
    }

    std::sort(found.begin(), found.end());
    SolutionSet out;
    for (auto& [z1, z2] : found)
        out.solutions.emplace_back(z1, z2, params,
                                   scaled_residual(params, z1, z2));
    return out;
}

}  // namespace fhc
