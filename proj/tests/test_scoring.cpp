#include <cmath>

#include "doctest.h"
#include "semline/scoring.hpp"

using namespace semline;

namespace {
constexpr double kPi = 3.14159265358979323846;

FeatureMap coordinate_plane(const ImageFrame& fr, bool use_x) {
    FeatureMap fm = constant_map(fr, 1, 0.0);
    for (int y = 0; y < fr.height; ++y)
        for (int x = 0; x < fr.width; ++x)
            fm.planes[0][size_t(y) * fr.width + x] = use_x ? x : y;
    return fm;
}

// 4-quadrant RGB image with distinct constant colors
ImageU8 quadrant_image(int w, int h) {
    ImageU8 img;
    img.width = w;
    img.height = h;
    img.channels = 3;
    img.data.resize(size_t(w) * h * 3);
    const uint8_t colors[4][3] = {{255, 0, 0}, {0, 255, 0}, {0, 0, 255}, {255, 255, 0}};
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const int q = (y < h / 2 ? 0 : 2) + (x < w / 2 ? 0 : 1);
            for (int c = 0; c < 3; ++c) img.at(x, y, c) = colors[q][c];
        }
    return img;
}

}  // namespace

TEST_CASE("line_pool") {
    const ImageFrame fr{401, 401};
    SUBCASE("constant map pools to the constant") {
        auto fm = constant_map(fr, 2, 3.5);
        auto pooled = line_pool(fm, Line{17.0, 0.7});
        REQUIRE(pooled.size() == 2);
        CHECK(pooled[0] == doctest::Approx(3.5).epsilon(1e-12));
        CHECK(pooled[1] == doctest::Approx(3.5).epsilon(1e-12));
    }
    SUBCASE("x plane along the vertical center line") {
        auto fm = coordinate_plane(fr, true);
        CHECK(line_pool(fm, Line{0.0, kPi / 2.0})[0] == doctest::Approx(200.0));
    }
    SUBCASE("y plane along the 101x101 diagonal") {
        const ImageFrame small{101, 101};
        auto fm = coordinate_plane(small, false);
        // oracle: trace is x == y for x = 0..100, mean y = 50
        CHECK(line_pool(fm, Line{0.0, kPi / 4.0})[0] == doctest::Approx(50.0));
    }
}

TEST_CASE("region_features") {
    const ImageFrame fr{400, 400};
    SUBCASE("constant map, equal quadrants") {
        auto part = partition({Line{0.0, 0.0}, Line{0.0, kPi / 2.0}}, fr);
        auto rf = region_features(constant_map(fr, 2, 1.5), part);
        REQUIRE(rf.weight.size() == 4);
        double sum = 0.0;
        for (double w : rf.weight) {
            CHECK(w == doctest::Approx(0.25).epsilon(1e-12));
            sum += w;
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
        for (const auto& r : rf.region_mean)
            for (double v : r) CHECK(v == doctest::Approx(1.5));
    }
    SUBCASE("three regions zero-fill the fourth slot") {
        // two lines meeting on the boundary give 3 regions
        auto part = partition({Line{0.0, 0.0}, Line{fr.cy(), 0.0}}, fr);
        if (part.region_count == 3) {
            auto rf = region_features(constant_map(fr, 2, 1.0), part);
            for (int c = 0; c < 2; ++c) CHECK(rf.concatenated[size_t(3 * 2 + c)] == 0.0);
        }
    }
    SUBCASE("softmax of area fractions 0.75 / 0.25") {
        // split a 400x400 frame at y = 299.5: 300 rows vs 100 rows
        auto part = partition({Line{-100.0, 0.0}}, fr);
        REQUIRE(part.region_count == 2);
        auto rf = region_features(constant_map(fr, 1, 0.0), part);
        const double e75 = std::exp(0.75), e25 = std::exp(0.25);
        const double hi = e75 / (e75 + e25);
        CHECK(std::max(rf.weight[0], rf.weight[1]) == doctest::Approx(hi).epsilon(1e-9));
        CHECK(hi == doctest::Approx(0.6225).epsilon(1e-3));
    }
}

TEST_CASE("heuristic_line_scorer") {
    const ImageFrame fr{101, 101};
    auto grid = generate(fr, 15, 12);  // odd rho bins: rho = 0 is a center
    SUBCASE("bright horizontal edge peaks at the center horizontal candidate") {
        ImageU8 img;
        img.width = img.height = 101;
        img.channels = 1;
        img.data.assign(size_t(101) * 101, 0);
        for (int y = 51; y < 101; ++y)
            for (int x = 0; x < 101; ++x) img.at(x, y) = 255;
        auto scores = heuristic_line_scorer(gradient_magnitude(img), grid);

        // brute force: the best candidate must be (rho ~ 0, phi = 0)
        int best = 0;
        for (int k = 1; k < grid.size(); ++k)
            if (scores.prob[size_t(k)] > scores.prob[size_t(best)]) best = k;
        CHECK(scores.prob[size_t(best)] == doctest::Approx(1.0));
        CHECK(grid.candidates[size_t(best)].phi == doctest::Approx(0.0));
        CHECK(std::fabs(grid.candidates[size_t(best)].rho) < grid.rho_bin_width());
    }
    SUBCASE("all-zero gradient -> all probabilities zero") {
        ImageU8 img;
        img.width = img.height = 101;
        img.channels = 1;
        img.data.assign(size_t(101) * 101, 128);
        auto scores = heuristic_line_scorer(gradient_magnitude(img), grid);
        for (double p : scores.prob) CHECK(p == 0.0);
    }
    SUBCASE("uniform gradient -> all valid candidates rescale to 1") {
        auto scores = heuristic_line_scorer(constant_map(fr, 1, 0.4), grid);
        for (int k = 0; k < grid.size(); ++k) {
            if (grid.valid[size_t(k)])
                CHECK(scores.prob[size_t(k)] == doctest::Approx(1.0));
            else
                CHECK(scores.prob[size_t(k)] == 0.0);
        }
    }
}

TEST_CASE("heuristic harmony scorer") {
    const ImageFrame fr{200, 200};
    auto grid = generate(fr, 30, 30);
    const HeuristicHarmonyScorer scorer(color_features(quadrant_image(200, 200)), fr,
                                        grid.rho_bin_width(), grid.phi_bin_width());

    SelectedLine horiz{Line{0.0, 0.0}, 0, 1.0, {0, 0}};
    SelectedLine vert{Line{0.0, kPi / 2.0}, 1, 1.0, {0, 0}};
    SelectedLine near_horiz{Line{2.0, 0.0}, 2, 1.0, {0, 0}};

    SUBCASE("duplicated input reduces to the unary term") {
        CHECK(scorer.self_score(horiz) == scorer.pair_score(horiz, horiz));
        SelectedLine copy = horiz;
        copy.candidate_index = 9;
        CHECK(scorer.pair_score(horiz, copy) == doctest::Approx(scorer.self_score(horiz)));
    }
    SUBCASE("perpendicular beats nearly-parallel on a quadrant image") {
        const double h_perp = scorer.pair_score(horiz, vert);
        const double h_par = scorer.pair_score(horiz, near_horiz);
        CHECK(h_perp > h_par);
    }
    SUBCASE("symmetry is bit-for-bit") {
        CHECK(scorer.pair_score(horiz, vert) == scorer.pair_score(vert, horiz));
        CHECK(scorer.pair_score(near_horiz, vert) == scorer.pair_score(vert, near_horiz));
    }
}

TEST_CASE("file harmony scorer") {
    FileHarmonyScorer scorer({{{2, 5}, 0.7}});
    SelectedLine a{Line{0, 0}, 5, 1.0, {0, 0}};
    SelectedLine b{Line{10, 0.3}, 2, 1.0, {0, 0}};
    CHECK(scorer.pair_score(a, b) == 0.7);
    CHECK(scorer.pair_score(b, a) == 0.7);
    SelectedLine c{Line{20, 0.5}, 7, 1.0, {0, 0}};
    CHECK(scorer.pair_score(a, c) == 0.0);
}

TEST_CASE("harmony_label") {
    CHECK(harmony_label(0.0, 0.0) == 1.0);
    CHECK(harmony_label(1.0, 0.0) == doctest::Approx(0.36788).epsilon(1e-4));
    CHECK(harmony_label(1.0, 1.0) == doctest::Approx(0.13534).epsilon(1e-4));
    // monotone nonincreasing in each argument
    double prev = 2.0;
    for (double d = 0.0; d <= 3.0; d += 0.1) {
        const double v = harmony_label(d, 0.5);
        CHECK(v <= prev);
        prev = v;
    }
}

TEST_CASE("harmony_loss") {
    CHECK(harmony_loss(0.5, 0.5) == 0.0);
    CHECK(harmony_loss(1.0, 0.0) == 1.0);
    CHECK(harmony_loss(0.3, 0.7) == doctest::Approx(0.16));
}
