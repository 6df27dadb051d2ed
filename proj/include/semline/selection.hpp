#pragma once

#include <map>
#include <vector>

#include "semline/hough.hpp"
#include "semline/scoring.hpp"

namespace semline {

struct SelectionResult {
    std::vector<int> selected;        // in selection order
    std::map<int, int> suppressed;    // removed index -> selecting index
};

// Greedy selection-and-removal: pick the argmax-probability candidate
// (ties to the lowest index), suppress its grid neighborhood, repeat up to
// k times. Stops early when no positive-probability candidate remains, or
// when the best remaining probability falls below stop_prob (> 0 enables
// the threshold-stopping variant).
SelectionResult select_and_remove(const ScoredCandidates& scores, const HoughGrid& grid,
                                  int k, int radius, double stop_prob = 0.0);

// Selected lines with their probabilities and offsets attached, ready for
// graph construction.
std::vector<SelectedLine> selected_lines(const SelectionResult& sel,
                                         const ScoredCandidates& scores,
                                         const HoughGrid& grid);

}  // namespace semline
