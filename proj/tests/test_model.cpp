#include <doctest.h>

#include <vector>

#include "fhc/model.hpp"

using namespace fhc;

TEST_CASE("loop preset adjacency") {
    auto g = GraphSpec::preset("loop");
    CHECK(g.a[0][0] == 1);
    CHECK(g.a[0][1] == 1);
    CHECK(g.a[0][2] == 1);
    CHECK(g.a[1][1] == 1);
    CHECK(g.a[2][2] == 1);
    CHECK(g.a[1][2] == 0);
    CHECK(g.a[2][1] == 0);
}

TEST_CASE("rod preset differs from loop only at (0,0)") {
    auto loop = GraphSpec::preset("loop");
    auto rod = GraphSpec::preset("rod");
    CHECK(rod.a[0][0] == 0);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (i != 0 || j != 0) CHECK(rod.a[i][j] == loop.a[i][j]);
}

TEST_CASE("unknown preset rejected") {
    CHECK_THROWS_AS(GraphSpec::preset("whistle"), InvalidParameter);
    CHECK_THROWS_AS(GraphSpec::preset("key"), InvalidParameter);
}

TEST_CASE("custom graph validation") {
    CHECK_THROWS_AS(GraphSpec::custom({0, 1, 0, 1, 1, 0, 1, 0, 1}),
                    InvalidParameter);  // asymmetric
    CHECK_THROWS_AS(GraphSpec::custom({0, 0, 0, 0, 1, 0, 0, 0, 1}),
                    InvalidParameter);  // zero row
    CHECK_THROWS_AS(GraphSpec::custom({2, 1, 1, 1, 1, 0, 1, 0, 1}),
                    InvalidParameter);  // non-binary
    auto g = GraphSpec::custom({1, 1, 1, 1, 1, 1, 1, 1, 1});
    CHECK(g.spin_symmetric());
}

TEST_CASE("admissibility of single pairs") {
    auto loop = GraphSpec::preset("loop");
    auto rod = GraphSpec::preset("rod");
    using P = std::pair<int, int>;
    std::vector<P> p12 = {{1, 2}};
    std::vector<P> p00 = {{0, 0}};
    CHECK_FALSE(is_admissible(loop, p12));
    CHECK_FALSE(is_admissible(rod, p00));
    CHECK(is_admissible(loop, p00));
}

TEST_CASE("admissibility matches adjacency for all 9 pairs") {
    for (auto name : {"loop", "rod"}) {
        auto g = GraphSpec::preset(name);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                std::vector<std::pair<int, int>> pair = {{i, j}};
                CHECK(is_admissible(g, pair) == (g.a[i][j] == 1));
            }
    }
}

TEST_CASE("admissibility over a chain of pairs") {
    auto rod = GraphSpec::preset("rod");
    std::vector<std::pair<int, int>> chain = {{0, 1}, {1, 1}, {1, 0}, {0, 2}};
    CHECK(is_admissible(rod, chain));
    chain.push_back({2, 1});
    CHECK_FALSE(is_admissible(rod, chain));
}

TEST_CASE("activity and params validation") {
    CHECK_THROWS_AS(Activity(0.0), InvalidParameter);
    CHECK_THROWS_AS(Activity(-1.0), InvalidParameter);
    CHECK_THROWS_AS(ModelParams(GraphSpec::preset("rod"), 0, 1.0),
                    InvalidParameter);
}
