#pragma once

#include <cstdint>
#include <vector>

#include "semline/scoring.hpp"

namespace semline {

inline constexpr int kMaxGraphNodes = 16;

// Complete weighted graph over the selected lines. weight(i, j) is the
// pairwise harmony score, the diagonal holds the self-harmony.
struct HarmonyGraph {
    std::vector<SelectedLine> nodes;
    std::vector<double> weights;  // K x K, row-major, symmetric

    int size() const { return int(nodes.size()); }
    double weight(int i, int j) const { return weights[size_t(i) * nodes.size() + j]; }
};

struct Clique {
    std::vector<int> members;  // sorted node indices
    double energy = 0.0;
    bool fallback = false;     // true when no multi-node subset was feasible
};

HarmonyGraph build_graph(const std::vector<SelectedLine>& lines, const HarmonyScorer& scorer);

// Sum of internal edge weights; 0 for empty and singleton member sets.
double harmony_energy(const HarmonyGraph& graph, uint32_t members);
double harmony_energy(const HarmonyGraph& graph, const std::vector<int>& members);

// Exhaustive search over all subsets of size >= 2 whose minimum internal
// edge weight exceeds kappa; returns the one of maximum energy (ties:
// larger cardinality, then lexicographically smallest member set). Falls
// back to the single node of maximum self-harmony when nothing is feasible.
Clique max_weight_clique(const HarmonyGraph& graph, double kappa);

// Applies each line's regression offset and re-canonicalizes. A refined
// line that leaves the frame is kept unrefined and flagged.
struct RefineResult {
    std::vector<SelectedLine> lines;
    std::vector<uint8_t> kept_unrefined;  // per line, 1 when the offset was discarded
};
RefineResult refine(const std::vector<SelectedLine>& lines, const ImageFrame& frame);

}  // namespace semline
