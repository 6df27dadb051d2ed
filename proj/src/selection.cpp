#include "semline/selection.hpp"

namespace semline {

SelectionResult select_and_remove(const ScoredCandidates& scores, const HoughGrid& grid,
                                  int k, int radius, double stop_prob) {
    if (k < 1) throw std::invalid_argument("select_and_remove: k must be >= 1");
    if (radius < 0) throw std::invalid_argument("select_and_remove: negative radius");
    if (scores.size() != grid.size())
        throw DimensionMismatch("select_and_remove: scores size " +
                                std::to_string(scores.size()) + " vs grid " +
                                std::to_string(grid.size()));

    const int n = grid.size();
    std::vector<uint8_t> removed(size_t(n), 0);

    SelectionResult result;
    for (int round = 0; round < k; ++round) {
        int best = -1;
        double best_prob = 0.0;
        for (int i = 0; i < n; ++i) {
            if (removed[size_t(i)]) continue;
            const double p = scores.prob[size_t(i)];
            if (p > best_prob) {
                best_prob = p;
                best = i;
            }
        }
        if (best < 0 || best_prob <= 0.0 || best_prob < stop_prob) {
            if (round == 0 && best < 0)
                throw NoCandidates("select_and_remove: all probabilities are 0");
            break;
        }
        result.selected.push_back(best);
        for (int j : neighborhood(grid, best, radius)) {
            if (!removed[size_t(j)]) {
                removed[size_t(j)] = 1;
                if (j != best) result.suppressed.emplace(j, best);
            }
        }
    }
    if (result.selected.empty())
        throw NoCandidates("select_and_remove: no candidate above the stopping threshold");
    return result;
}

std::vector<SelectedLine> selected_lines(const SelectionResult& sel,
                                         const ScoredCandidates& scores,
                                         const HoughGrid& grid) {
    std::vector<SelectedLine> out;
    out.reserve(sel.selected.size());
    for (int idx : sel.selected) {
        SelectedLine s;
        s.line = grid.candidates[size_t(idx)];
        s.candidate_index = idx;
        s.prob = scores.prob[size_t(idx)];
        s.offset = scores.offset[size_t(idx)];
        out.push_back(s);
    }
    return out;
}

}  // namespace semline
