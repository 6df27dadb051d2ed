#include "semline/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace semline {

namespace {
constexpr double kPi = 3.14159265358979323846;

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

double squash(double d) { return 1.0 - std::exp(-4.0 * d); }

double vec_distance(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (size_t c = 0; c < a.size(); ++c) {
        double d = a[c] - b[c];
        s += d * d;
    }
    return std::sqrt(s);
}

// Hough-space distance in bin units, accounting for the (rho, phi+pi) ==
// (-rho, phi) identification.
double hough_distance_bins(const Line& a, const Line& b, double rbw, double pbw) {
    double dphi = std::fabs(a.phi - b.phi);
    double d1 = std::hypot((a.rho - b.rho) / rbw, dphi / pbw);
    double d2 = std::hypot((a.rho + b.rho) / rbw, (kPi - dphi) / pbw);
    return std::min(d1, d2);
}

}  // namespace

double HarmonyScorer::pair_score(const SelectedLine& a, const SelectedLine& b) const {
    // canonical argument order makes symmetry structural
    auto key = [](const SelectedLine& s) {
        return std::tuple<int, double, double>(s.candidate_index, s.line.rho, s.line.phi);
    };
    if (key(b) < key(a)) return score_ordered(b, a);
    return score_ordered(a, b);
}

std::vector<double> line_pool(const FeatureMap& map, const Line& line) {
    const auto trace = pixels_along(line, map.frame());
    std::vector<double> pooled(size_t(map.channel_count()), 0.0);
    for (int c = 0; c < map.channel_count(); ++c) {
        double sum = 0.0;
        for (auto [x, y] : trace) sum += map.at(c, x, y);
        pooled[size_t(c)] = sum / double(trace.size());
    }
    return pooled;
}

RegionFeatures region_features(const FeatureMap& map, const RegionPartition& part) {
    if (part.width != map.width || part.height != map.height)
        throw FrameMismatch("region_features: partition frame differs from map");
    const int m = part.region_count;
    if (m > 4)
        throw std::invalid_argument("region_features: more than 4 regions");
    const int c_count = map.channel_count();
    const double total = double(part.width) * part.height;

    RegionFeatures rf;
    rf.region_mean.assign(size_t(m), std::vector<double>(size_t(c_count), 0.0));
    for (int y = 0; y < part.height; ++y)
        for (int x = 0; x < part.width; ++x) {
            auto& acc = rf.region_mean[size_t(part.at(x, y))];
            for (int c = 0; c < c_count; ++c) acc[size_t(c)] += map.at(c, x, y);
        }
    for (int i = 0; i < m; ++i)
        for (auto& v : rf.region_mean[size_t(i)]) v /= double(part.areas[size_t(i)]);

    // softmax over area fractions, resolution-invariant
    rf.weight.resize(size_t(m));
    double denom = 0.0;
    for (int i = 0; i < m; ++i) {
        rf.weight[size_t(i)] = std::exp(double(part.areas[size_t(i)]) / total);
        denom += rf.weight[size_t(i)];
    }
    for (auto& w : rf.weight) w /= denom;

    rf.concatenated.assign(size_t(4 * c_count), 0.0);
    for (int i = 0; i < m; ++i)
        for (int c = 0; c < c_count; ++c)
            rf.concatenated[size_t(i * c_count + c)] =
                rf.weight[size_t(i)] * rf.region_mean[size_t(i)][size_t(c)];
    return rf;
}

ScoredCandidates heuristic_line_scorer(const FeatureMap& gradient, const HoughGrid& grid) {
    ScoredCandidates scores;
    scores.prob.assign(size_t(grid.size()), 0.0);
    scores.offset.assign(size_t(grid.size()), {0.0, 0.0});

    const int n = grid.size();
#pragma omp parallel for schedule(static)
    for (int k = 0; k < n; ++k) {
        if (!grid.valid[size_t(k)]) continue;
        scores.prob[size_t(k)] = line_pool(gradient, grid.candidates[size_t(k)])[0];
    }
    double peak = 0.0;
    for (double p : scores.prob) peak = std::max(peak, p);
    if (peak > 0.0)
        for (double& p : scores.prob) p = clamp01(p / peak);
    return scores;
}

HeuristicHarmonyScorer::HeuristicHarmonyScorer(FeatureMap features, ImageFrame frame,
                                               double rho_bin_width, double phi_bin_width,
                                               double window_bins)
    : features_(std::move(features)),
      frame_(frame),
      rho_bin_width_(rho_bin_width),
      phi_bin_width_(phi_bin_width),
      window_bins_(window_bins) {}

double HeuristicHarmonyScorer::unary(const Line& line) const {
    if (!intersects(line, frame_)) return 0.0;
    auto part = partition({line}, frame_);
    if (part.region_count < 2) return 0.0;
    auto rf = region_features(features_, part);
    return clamp01(squash(vec_distance(rf.region_mean[0], rf.region_mean[1])));
}

double HeuristicHarmonyScorer::score_ordered(const SelectedLine& a, const SelectedLine& b) const {
    const double u =
        hough_distance_bins(a.line, b.line, rho_bin_width_, phi_bin_width_);
    const double unary_a = unary(a.line);
    if (u < 1e-9) return unary_a;  // duplicated input: unary term only
    const double unary_b = unary(b.line);

    if (!intersects(a.line, frame_) || !intersects(b.line, frame_)) return 0.0;
    auto part = partition({a.line, b.line}, frame_);
    auto rf = region_features(features_, part);
    double dist_sum = 0.0;
    int pairs = 0;
    for (size_t i = 0; i < rf.region_mean.size(); ++i)
        for (size_t j = i + 1; j < rf.region_mean.size(); ++j) {
            dist_sum += vec_distance(rf.region_mean[i], rf.region_mean[j]);
            ++pairs;
        }
    if (pairs == 0) return 0.0;
    const double contrast = squash(dist_sum / pairs);
    const double penalty = std::min(1.0, u / window_bins_);
    return clamp01(contrast * penalty * 0.5 * (unary_a + unary_b));
}

double FileHarmonyScorer::lookup(int i, int j) const {
    auto key = std::minmax(i, j);
    auto it = pairs_.find({key.first, key.second});
    return it == pairs_.end() ? 0.0 : it->second;
}

double FileHarmonyScorer::score_ordered(const SelectedLine& a, const SelectedLine& b) const {
    return lookup(a.candidate_index, b.candidate_index);
}

double harmony_label(double d_i, double d_j) {
    return std::exp(-(d_i * d_i + d_j * d_j));
}

double harmony_loss(double h, double h_bar) {
    const double d = h - h_bar;
    return d * d;
}

}  // namespace semline
