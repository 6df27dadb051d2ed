#pragma once

#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "semline/hough.hpp"
#include "semline/image.hpp"

namespace semline {

// Per-candidate probability and refinement offset, one entry per grid cell.
struct ScoredCandidates {
    std::vector<double> prob;                            // in [0,1]; 0 for invalid candidates
    std::vector<std::pair<double, double>> offset;       // (delta rho, delta phi)

    int size() const { return int(prob.size()); }
};

// A line selected as a graph node: its grid candidate index plus scores.
struct SelectedLine {
    Line line;
    int candidate_index = -1;
    double prob = 0.0;
    std::pair<double, double> offset{0.0, 0.0};
};

// Pairwise harmony provider. pair_score is symmetric; self_score equals
// pair_score with the line duplicated. Implementations must be safe for
// concurrent calls after construction.
class HarmonyScorer {
public:
    virtual ~HarmonyScorer() = default;

    double pair_score(const SelectedLine& a, const SelectedLine& b) const;
    double self_score(const SelectedLine& a) const { return pair_score(a, a); }

protected:
    virtual double score_ordered(const SelectedLine& a, const SelectedLine& b) const = 0;
};

// Mean of X over the rasterized trace of the line, per channel.
std::vector<double> line_pool(const FeatureMap& map, const Line& line);

struct RegionFeatures {
    std::vector<std::vector<double>> region_mean;  // M vectors of C scalars
    std::vector<double> weight;                    // softmax of area fractions, sums to 1
    std::vector<double> concatenated;              // 4*C scalars, zero-filled past M
};

// Area-softmax-weighted mean feature vectors of the partition regions,
// concatenated into 4 slots (zero-filled when M < 4). M must be <= 4.
RegionFeatures region_features(const FeatureMap& map, const RegionPartition& part);

// Gradient-pooling stand-in for a learned candidate scorer: probability is
// the pooled gradient magnitude rescaled by the max over valid candidates;
// offsets are zero.
ScoredCandidates heuristic_line_scorer(const FeatureMap& gradient, const HoughGrid& grid);

// Stand-in pairwise scorer built from inter-region features: a squashed
// region-contrast term times a redundancy penalty that vanishes as the two
// lines' Hough distance drops below the removal window, times the mean of
// the two unary terms. Identical lines reduce to the unary term.
class HeuristicHarmonyScorer : public HarmonyScorer {
public:
    HeuristicHarmonyScorer(FeatureMap features, ImageFrame frame, double rho_bin_width,
                           double phi_bin_width, double window_bins = 5.0);

protected:
    double score_ordered(const SelectedLine& a, const SelectedLine& b) const override;

private:
    double unary(const Line& line) const;

    FeatureMap features_;
    ImageFrame frame_;
    double rho_bin_width_;
    double phi_bin_width_;
    double window_bins_;
};

// Harmony scores read from a score file; pairs keyed by canonical
// (min, max) candidate index, missing pairs score 0.
class FileHarmonyScorer : public HarmonyScorer {
public:
    explicit FileHarmonyScorer(std::map<std::pair<int, int>, double> pairs)
        : pairs_(std::move(pairs)) {}

    double lookup(int i, int j) const;

protected:
    double score_ordered(const SelectedLine& a, const SelectedLine& b) const override;

private:
    std::map<std::pair<int, int>, double> pairs_;
};

// Soft training label for a disturbed positive pair: exp(-(di^2 + dj^2)),
// so the undisturbed pair is labeled 1.
double harmony_label(double d_i, double d_j);

// Squared error against the ground-truth label.
double harmony_loss(double h, double h_bar);

}  // namespace semline
