#include <random>

#include "doctest.h"
#include "semline/metrics.hpp"

using namespace semline;

namespace {
constexpr double kPi = 3.14159265358979323846;

const ImageFrame f400{400, 400};

Line horizontal_at(double y, const ImageFrame& fr) {
    // n = (0,-1): rho = -(y - cy)
    return Line{-(y - fr.cy()), 0.0};
}

std::vector<Line> random_line_set(std::mt19937& rng, const ImageFrame& fr, int max_lines) {
    std::uniform_real_distribution<double> rho(-fr.half_diagonal() * 0.7,
                                               fr.half_diagonal() * 0.7);
    std::uniform_real_distribution<double> phi(0.0, kPi);
    std::vector<Line> lines;
    const int n = 1 + int(rng() % uint32_t(max_lines));
    while (int(lines.size()) < n) {
        Line l{rho(rng), phi(rng)};
        if (intersects(l, fr)) lines.push_back(l);
    }
    return lines;
}

}  // namespace

TEST_CASE("line_miou") {
    SUBCASE("identical lines") {
        const Line l{30.0, 0.7};
        CHECK(line_miou(l, l, f400) == doctest::Approx(1.0));
    }
    SUBCASE("horizontals at H/2 and H/4 -> 7/12") {
        const Line a = horizontal_at(200.0, f400);
        const Line b = horizontal_at(100.0, f400);
        CHECK(line_miou(a, b, f400) == doctest::Approx(7.0 / 12.0).epsilon(0.01));
        CHECK(line_miou(a, b, f400) == line_miou(b, a, f400));
    }
    SUBCASE("perpendicular center lines -> 1/3") {
        CHECK(line_miou(Line{0.0, 0.0}, Line{0.0, kPi / 2.0}, f400) ==
              doctest::Approx(1.0 / 3.0).epsilon(0.01));
    }
    SUBCASE("off-frame line throws") {
        CHECK_THROWS_AS(line_miou(Line{9999.0, 0.0}, Line{0.0, 0.0}, f400), NoIntersection);
    }
}

TEST_CASE("ea_score") {
    SUBCASE("identical lines") {
        CHECK(ea_score(Line{25.0, 0.4}, Line{25.0, 0.4}, f400) == doctest::Approx(1.0));
    }
    SUBCASE("perpendicular lines through one midpoint") {
        CHECK(ea_score(Line{0.0, 0.0}, Line{0.0, kPi / 2.0}, f400) == doctest::Approx(0.0));
    }
    SUBCASE("parallel horizontals half a diagonal apart") {
        const double half_diag = f400.diagonal() / 2.0;
        const Line a{half_diag / 2.0, 0.0};
        const Line b{-half_diag / 2.0, 0.0};
        CHECK(ea_score(a, b, f400) == doctest::Approx(0.5).epsilon(1e-9));
    }
    SUBCASE("symmetry") {
        const Line a{40.0, 0.3}, b{-25.0, 2.1};
        CHECK(ea_score(a, b, f400) == ea_score(b, a, f400));
    }
}

TEST_CASE("match_lines") {
    const std::vector<Line> gt = {Line{0.0, 0.0}, Line{50.0, 1.2}, Line{-80.0, 2.5}};
    SUBCASE("exact detection matches everything") {
        auto mr = match_lines(gt, gt, f400, MatchMetric::miou, 0.9);
        CHECK(mr.n_correct == 3);
        CHECK(mr.n_false_pos == 0);
        CHECK(mr.n_false_neg == 0);
    }
    SUBCASE("counts produce the precision/recall arithmetic") {
        auto pr = precision_recall(3, 1, 2);
        CHECK(pr.precision == doctest::Approx(0.75));
        CHECK(pr.recall == doctest::Approx(0.6));
        CHECK(pr.f_measure == doctest::Approx(2.0 / 3.0));
    }
    SUBCASE("one-to-one: two detections cannot both claim one GT") {
        const std::vector<Line> det = {Line{0.0, 0.0}, Line{2.0, 0.0}};
        const std::vector<Line> single_gt = {Line{0.0, 0.0}};
        auto mr = match_lines(det, single_gt, f400, MatchMetric::miou, 0.5);
        CHECK(mr.n_correct == 1);
        CHECK(mr.n_false_pos == 1);
        CHECK(mr.n_false_neg == 0);
        // the higher-scoring detection takes the match
        REQUIRE(mr.assignment.size() == 1);
        CHECK(mr.assignment[0].first == 0);
    }
    SUBCASE("empty detected list") {
        auto mr = match_lines({}, gt, f400, MatchMetric::miou, 0.5);
        CHECK(mr.n_correct == 0);
        CHECK(mr.n_false_pos == 0);
        CHECK(mr.n_false_neg == 3);
    }
    SUBCASE("matching is monotone in tau") {
        const std::vector<Line> det = {Line{10.0, 0.1}, Line{60.0, 1.3}, Line{-200.0, 2.0}};
        int prev = 999;
        for (double tau = 0.1; tau < 1.0; tau += 0.1) {
            auto mr = match_lines(det, gt, f400, MatchMetric::miou, tau);
            CHECK(mr.n_correct <= prev);
            prev = mr.n_correct;
        }
    }
}

TEST_CASE("auc") {
    auto grid = default_tau_grid();
    REQUIRE(grid.size() == 49);
    CHECK(grid.front() == doctest::Approx(0.02));
    CHECK(grid.back() == doctest::Approx(0.98));

    SUBCASE("constant curve") {
        std::vector<double> half(grid.size(), 0.5);
        CHECK(auc(grid, half) == doctest::Approx(0.5));
    }
    SUBCASE("linear curve equals its midpoint mean") {
        std::vector<double> linear;
        for (double t : grid) linear.push_back(t);
        CHECK(auc(grid, linear) == doctest::Approx(0.5));
    }
    SUBCASE("step curve matches a trapezoid oracle") {
        std::vector<double> step;
        for (double t : grid) step.push_back(t < 0.5 ? 1.0 : 0.0);
        double area = 0.0;
        for (size_t i = 1; i < grid.size(); ++i)
            area += 0.5 * (step[i] + step[i - 1]) * (grid[i] - grid[i - 1]);
        CHECK(auc(grid, step) == doctest::Approx(area / (0.98 - 0.02)));
    }
    SUBCASE("grid too small") {
        CHECK_THROWS_AS(auc({0.5}, {1.0}), GridTooSmall);
    }
}

TEST_CASE("hiou") {
    SUBCASE("identical sets") {
        const std::vector<Line> lines = {Line{0.0, 0.0}, Line{40.0, 1.0}};
        CHECK(hiou(lines, lines, f400) == 1.0);
    }
    SUBCASE("horizontal vs vertical center -> 1/3") {
        CHECK(hiou({Line{0.0, 0.0}}, {Line{0.0, kPi / 2.0}}, f400) ==
              doctest::Approx(1.0 / 3.0).epsilon(0.01));
    }
    SUBCASE("empty detected vs one line -> 0.5") {
        CHECK(hiou({}, {Line{0.0, 0.0}}, f400) == doctest::Approx(0.5).epsilon(0.01));
    }
    SUBCASE("both empty -> 1.0") {
        CHECK(hiou({}, {}, f400) == 1.0);
    }
    SUBCASE("symmetric and 1 only for identical partitions") {
        std::mt19937 rng(61);
        for (int trial = 0; trial < 10; ++trial) {
            auto a = random_line_set(rng, f400, 4);
            auto b = random_line_set(rng, f400, 4);
            const double ab = hiou(a, b, f400);
            CHECK(ab == doctest::Approx(hiou(b, a, f400)).epsilon(1e-12));
            CHECK(hiou(a, a, f400) == 1.0);
        }
    }
}

TEST_CASE("evaluate") {
    std::vector<EvalImage> images;
    EvalImage a;
    a.image_id = "b_img";
    a.frame = f400;
    a.ground_truth = {Line{0.0, 0.0}, Line{30.0, 1.1}};
    a.detected = a.ground_truth;
    EvalImage b;
    b.image_id = "a_img";
    b.frame = f400;
    b.ground_truth = {Line{-20.0, 2.0}};
    b.detected = {Line{-20.0, 2.0}};
    images = {a, b};

    auto report = evaluate(images, MatchMetric::miou, default_tau_grid());
    CHECK(report.auc_f == doctest::Approx(1.0));
    CHECK(report.hiou_mean == doctest::Approx(1.0));
    // per-image list is sorted by id regardless of input order
    REQUIRE(report.hiou_per_image.size() == 2);
    CHECK(report.hiou_per_image[0].first == "a_img");

    // F is the harmonic mean of P and R at every grid point
    for (const auto& pr : report.curve) {
        const double expect = (pr.precision + pr.recall) == 0.0
                                  ? 0.0
                                  : 2.0 * pr.precision * pr.recall / (pr.precision + pr.recall);
        CHECK(pr.f_measure == expect);
    }
}
