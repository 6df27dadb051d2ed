#include <algorithm>
#include <set>

#include "doctest.h"
#include "semline/hough.hpp"

using namespace semline;

namespace {
constexpr double kPi = 3.14159265358979323846;

// enumerate-and-filter oracle for the neighborhood
std::set<int> neighborhood_oracle(const HoughGrid& g, int index, int radius) {
    std::set<int> out;
    const int ri = g.rho_index(index), pi_ = g.phi_index(index);
    for (int r = 0; r < g.rho_bins; ++r)
        for (int p = 0; p < g.phi_bins; ++p) {
            int dp = std::abs(p - pi_);
            dp = std::min(dp, g.phi_bins - dp);
            if (std::abs(r - ri) <= radius && dp <= radius) out.insert(g.index_of(r, p));
        }
    return out;
}

}  // namespace

TEST_CASE("generate: single bin sits at the origin") {
    auto g = generate({401, 401}, 1, 1);
    REQUIRE(g.size() == 1);
    CHECK(g.candidates[0].rho == doctest::Approx(0.0));
    CHECK(g.candidates[0].phi == doctest::Approx(0.0));
    CHECK(g.valid[0] == 1);
}

TEST_CASE("generate: bin centers match the linspace oracle") {
    auto g = generate({401, 401}, 3, 2);
    REQUIRE(g.size() == 6);
    const double rmax = g.rho_max;
    // rho centers: -rmax + (i + 0.5) * (2 rmax / 3)
    for (int ri = 0; ri < 3; ++ri) {
        const double expect = -rmax + (ri + 0.5) * (2.0 * rmax / 3.0);
        for (int pi_ = 0; pi_ < 2; ++pi_)
            CHECK(g.candidates[size_t(g.index_of(ri, pi_))].rho == doctest::Approx(expect));
    }
    // phi starts at 0 with spacing pi / A
    CHECK(g.candidates[size_t(g.index_of(0, 0))].phi == doctest::Approx(0.0));
    CHECK(g.candidates[size_t(g.index_of(0, 1))].phi == doctest::Approx(kPi / 2.0));
}

TEST_CASE("generate: candidate count and extremes flagged") {
    auto g = generate({101, 101}, 20, 10);
    CHECK(g.size() == 200);
    CHECK(int(g.candidates.size()) == 200);
    // corner-distance rho at phi = 0 cannot intersect the frame
    int invalid = 0;
    for (auto v : g.valid) invalid += (v == 0);
    CHECK(invalid > 0);
}

TEST_CASE("neighborhood: paper window sizes") {
    auto g = generate({401, 401}, 30, 30);
    SUBCASE("radius 2 interior -> 25 cells (center + 24)") {
        CHECK(neighborhood(g, g.index_of(15, 15), 2).size() == 25);
    }
    SUBCASE("radius 0 -> just the index") {
        auto n = neighborhood(g, 42, 0);
        REQUIRE(n.size() == 1);
        CHECK(n[0] == 42);
    }
    SUBCASE("radius 2 at rho edge -> 15 (rho clamps, phi wraps)") {
        CHECK(neighborhood(g, g.index_of(0, 15), 2).size() == 15);
        CHECK(neighborhood(g, g.index_of(0, 0), 2).size() == 15);
    }
    SUBCASE("out of range index") {
        CHECK_THROWS_AS(neighborhood(g, 900, 2), IndexOutOfRange);
        CHECK_THROWS_AS(neighborhood(g, -1, 2), IndexOutOfRange);
    }
}

TEST_CASE("neighborhood: matches the enumerate-and-filter oracle") {
    auto g = generate({201, 201}, 7, 9);
    for (int radius : {0, 1, 2, 3}) {
        for (int idx = 0; idx < g.size(); idx += 5) {
            auto got = neighborhood(g, idx, radius);
            auto want = neighborhood_oracle(g, idx, radius);
            CHECK(std::set<int>(got.begin(), got.end()) == want);
        }
    }
}

TEST_CASE("neighborhood: contains center, symmetric, covers the grid") {
    auto g = generate({101, 81}, 6, 5);
    std::set<int> covered;
    for (int i = 0; i < g.size(); ++i) {
        auto ni = neighborhood(g, i, 1);
        CHECK(std::find(ni.begin(), ni.end(), i) != ni.end());
        covered.insert(ni.begin(), ni.end());
        for (int j : ni) {
            auto nj = neighborhood(g, j, 1);
            CHECK(std::find(nj.begin(), nj.end(), i) != nj.end());
        }
    }
    CHECK(int(covered.size()) == g.size());
}
