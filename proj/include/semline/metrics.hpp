#pragma once

#include <string>
#include <utility>
#include <vector>

#include "semline/geometry.hpp"

namespace semline {

enum class MatchMetric { miou, ea };

// Mean IoU of the best pairing between the two half-plane regions each
// line cuts the frame into.
double line_miou(const Line& a, const Line& b, const ImageFrame& frame);

// Product of a midpoint-distance factor (linear falloff over the frame
// diagonal) and an angular factor (linear falloff over pi/2).
double ea_score(const Line& a, const Line& b, const ImageFrame& frame);

struct MatchResult {
    int n_correct = 0;     // N_l
    int n_false_pos = 0;   // N_e
    int n_false_neg = 0;   // N_m
    std::vector<std::pair<int, int>> assignment;  // (detected, ground truth)
};

// Greedy one-to-one matching in descending score order among pairs whose
// score exceeds tau.
MatchResult match_lines(const std::vector<Line>& detected, const std::vector<Line>& ground_truth,
                        const ImageFrame& frame, MatchMetric metric, double tau);

struct PrecisionRecall {
    double precision = 0.0;
    double recall = 0.0;
    double f_measure = 0.0;
};

PrecisionRecall precision_recall(int n_correct, int n_false_pos, int n_false_neg);

// Trapezoidal mean of the curve over the threshold grid.
double auc(const std::vector<double>& tau_grid, const std::vector<double>& values);

std::vector<double> default_tau_grid();  // 0.02 .. 0.98, step 0.02

// Bidirectional best-match region IoU between the partitions induced by
// the two line sets. metric_scale > 1 evaluates on a downscaled raster.
double hiou(const std::vector<Line>& detected, const std::vector<Line>& ground_truth,
            const ImageFrame& frame, double metric_scale = 1.0);

struct EvalImage {
    std::string image_id;
    ImageFrame frame;
    std::vector<Line> detected;
    std::vector<Line> ground_truth;
};

struct EvalReport {
    std::vector<double> tau_grid;
    std::vector<PrecisionRecall> curve;  // aggregated over images, per tau
    double auc_p = 0.0;
    double auc_r = 0.0;
    double auc_f = 0.0;
    double hiou_mean = 0.0;
    std::vector<std::pair<std::string, double>> hiou_per_image;  // sorted by id
};

EvalReport evaluate(const std::vector<EvalImage>& images, MatchMetric metric,
                    const std::vector<double>& tau_grid, double metric_scale = 1.0);

}  // namespace semline
