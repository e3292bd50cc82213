#pragma once

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <utility>

#include "fhc/errors.hpp"

namespace fhc {

/// Interaction graph on the spin alphabet {0,1,2}. Spin 0 is the vacant
/// state; a configuration is admissible when every adjacent spin pair is
/// an edge of the graph.
struct GraphSpec {
    std::string name;
    std::array<std::array<int, 3>, 3> a{};  // symmetric 0/1 adjacency

    // "loop": edges {0,0},{0,1},{0,2},{1,1},{2,2}
    // "rod":  same minus {0,0}
    static GraphSpec preset(std::string_view name);

    // Any symmetric 0/1 matrix with no all-zero row, row-major order.
    static GraphSpec custom(const std::array<int, 9>& row_major,
                            std::string name = "custom");

    bool edge(int i, int j) const { return a[i][j] != 0; }
    bool is_loop() const { return name == "loop"; }
    bool is_rod() const { return name == "rod"; }
    // symmetric under swapping spins 1 and 2 (holds for both presets)
    bool spin_symmetric() const;

    bool operator==(const GraphSpec& other) const { return a == other.a; }
};

/// Per-spin activity vector (1, lambda, lambda).
struct Activity {
    double lambda = 1.0;

    explicit Activity(double lam) : lambda(lam) {
        if (!(lam > 0.0)) throw InvalidParameter("activity lambda must be > 0");
    }
    std::array<double, 3> per_spin() const { return {1.0, lambda, lambda}; }
};

struct ModelParams {
    GraphSpec graph;
    int k = 3;  // branching order; root of the rooted tree has k+1 neighbors
    Activity activity;

    ModelParams(GraphSpec g, int k_, double lambda)
        : graph(std::move(g)), k(k_), activity(lambda) {
        if (k < 1) throw InvalidParameter("branching order k must be >= 1");
    }
    double lambda() const { return activity.lambda; }
};

/// True iff every (parent, child) spin pair is an edge of the graph.
bool is_admissible(const GraphSpec& graph,
                   std::span<const std::pair<int, int>> pairs);

}  // namespace fhc
