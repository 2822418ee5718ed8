#include <doctest.h>

#include <set>
#include <stdexcept>
#include <tuple>

#include "ymlab/lattice.hpp"

using namespace ymlab;

TEST_CASE("construction is validated") {
    CHECK_THROWS_AS(LatticeGeometry(2, {4, 4}), std::invalid_argument);
    CHECK_THROWS_AS(LatticeGeometry(4, {4, 4, 4}), std::invalid_argument);
    CHECK_THROWS_AS(LatticeGeometry(3, {4, 0, 4}), std::invalid_argument);
    const LatticeGeometry g(4, {2, 3, 4, 5});
    CHECK(g.volume() == 120);
    CHECK(g.num_links() == 480);
    CHECK(g.num_planes() == 6);
    CHECK(LatticeGeometry(3, {2, 2, 2}).num_planes() == 3);
}

TEST_CASE("x_1 is the fastest coordinate") {
    const LatticeGeometry g(4, {2, 3, 4, 5});
    CHECK(g.index({1, 0, 0, 0}) == 1);
    CHECK(g.index({0, 1, 0, 0}) == 2);
    CHECK(g.index({0, 0, 1, 0}) == 6);
    CHECK(g.index({0, 0, 0, 1}) == 24);
    for (SiteIndex x = 0; x < g.volume(); ++x) CHECK(g.index(g.coords(x)) == x);
}

TEST_CASE("periodic shifts") {
    const LatticeGeometry one(4, {1, 4, 4, 4});
    for (SiteIndex x = 0; x < one.volume(); ++x) CHECK(one.shift(x, 0, +1) == x);

    const LatticeGeometry g(4, {3, 4, 5, 2});
    for (SiteIndex x = 0; x < g.volume(); ++x) {
        for (int mu = 0; mu < 4; ++mu) {
            CHECK(g.shift(g.shift(x, mu, +1), mu, -1) == x);
            CHECK(g.up(x, mu) == g.shift(x, mu, +1));
            CHECK(g.down(x, mu) == g.shift(x, mu, -1));
        }
    }
    const LatticeGeometry cube(3, {4, 4, 4});
    CHECK(cube.coords(cube.shift(0, 1, -1))[1] == 3);
    CHECK_THROWS(g.shift(0, 4, 1));
    CHECK_THROWS(g.shift(0, 0, 2));
}

TEST_CASE("plaquette corners") {
    const LatticeGeometry g(4, {2, 2, 2, 2});
    const auto c = g.plaquette_corners(0, 0, 1);
    CHECK(g.coords(c[0]) == Coords{0, 0, 0, 0});
    CHECK(g.coords(c[1]) == Coords{1, 0, 0, 0});
    CHECK(g.coords(c[2]) == Coords{1, 1, 0, 0});
    CHECK(g.coords(c[3]) == Coords{0, 1, 0, 0});
    const auto r = g.plaquette_corners(0, 1, 0);
    CHECK(r[1] == c[3]);
    CHECK(r[3] == c[1]);
    CHECK(r[2] == c[2]);
}

TEST_CASE("site-major plaquette enumeration visits each plaquette once") {
    const LatticeGeometry g(4, {3, 2, 4, 3});
    std::set<std::tuple<SiteIndex, int, int>> seen;
    for (SiteIndex x = 0; x < g.volume(); ++x)
        for (const auto& p : g.planes()) seen.insert({x, p[0], p[1]});
    CHECK(seen.size() == g.volume() * 6);
    for (int p = 0; p < g.num_planes(); ++p) CHECK(g.plane_of(g.planes()[p][0], g.planes()[p][1]) == p);
}
