#include "fhc/model.hpp"

namespace fhc {

namespace {

GraphSpec make(std::string name, std::array<std::array<int, 3>, 3> a) {
    GraphSpec g;
    g.name = std::move(name);
    g.a = a;
    return g;
}

}  // namespace

GraphSpec GraphSpec::preset(std::string_view name) {
    if (name == "loop") {
        return make("loop", {{{1, 1, 1}, {1, 1, 0}, {1, 0, 1}}});
    }
    if (name == "rod") {
        return make("rod", {{{0, 1, 1}, {1, 1, 0}, {1, 0, 1}}});
    }
    throw InvalidParameter("unknown graph preset: " + std::string(name));
}

GraphSpec GraphSpec::custom(const std::array<int, 9>& row_major,
                            std::string name) {
    GraphSpec g;
    g.name = std::move(name);
    for (int i = 0; i < 3; ++i) {
        int row_sum = 0;
        for (int j = 0; j < 3; ++j) {
            int v = row_major[3 * i + j];
            if (v != 0 && v != 1)
                throw InvalidParameter("adjacency entries must be 0 or 1");
            g.a[i][j] = v;
            row_sum += v;
        }
        if (row_sum == 0)
            throw InvalidParameter("adjacency row " + std::to_string(i) +
                                   " is all zero");
    }
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < i; ++j)
            if (g.a[i][j] != g.a[j][i])
                throw InvalidParameter("adjacency must be symmetric");
    return g;
}

bool GraphSpec::spin_symmetric() const {
    return a[0][1] == a[0][2] && a[1][1] == a[2][2] && a[1][0] == a[2][0];
}

bool is_admissible(const GraphSpec& graph,
                   std::span<const std::pair<int, int>> pairs) {
    for (const auto& [i, j] : pairs) {
        if (i < 0 || i > 2 || j < 0 || j > 2)
            throw InvalidParameter("spin out of range {0,1,2}");
        if (!graph.edge(i, j)) return false;
    }
    return true;
}

}  // namespace fhc
