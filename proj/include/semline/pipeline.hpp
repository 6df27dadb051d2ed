#pragma once

#include <string>
#include <vector>

#include "semline/mwcs.hpp"
#include "semline/selection.hpp"

namespace semline {

struct DetectionConfig {
    int rho_bins = 30;
    int phi_bins = 30;
    int k = 8;
    int removal_radius = 2;
    double kappa = 0.5;
    double stop_prob = 0.0;   // > 0 enables threshold stopping
    bool no_harmony = false;  // ablation: skip graph + clique, keep all selected lines
    bool no_offset = false;   // ablation: skip offset refinement
};

struct DetectionLine {
    Line line;
    int candidate_index = -1;
    double prob = 0.0;
    double self_harmony = 0.0;
    bool kept_unrefined = false;
};

struct Detection {
    std::string image_id;
    ImageFrame frame;
    std::vector<DetectionLine> lines;
    double energy = 0.0;
    bool fallback = false;
};

// candidates -> scores -> selection -> graph -> clique -> refinement
Detection detect(const std::string& image_id, const HoughGrid& grid,
                 const ScoredCandidates& scores, const HarmonyScorer& harmony,
                 const DetectionConfig& config);

// Heuristic-scorer convenience wrapper over an image.
Detection detect_image(const std::string& image_id, const ImageU8& image,
                       const DetectionConfig& config);

}  // namespace semline
