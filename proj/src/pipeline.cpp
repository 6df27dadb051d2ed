#include "semline/pipeline.hpp"

#include <algorithm>

namespace semline {

namespace {

std::vector<DetectionLine> finish(const std::vector<SelectedLine>& members,
                                  const HarmonyGraph* graph, const std::vector<int>* node_ids,
                                  const ImageFrame& frame, bool no_offset) {
    std::vector<SelectedLine> chosen = members;
    if (no_offset)
        for (auto& s : chosen) s.offset = {0.0, 0.0};
    const RefineResult refined = refine(chosen, frame);

    std::vector<DetectionLine> out;
    out.reserve(refined.lines.size());
    for (size_t i = 0; i < refined.lines.size(); ++i) {
        DetectionLine dl;
        dl.line = refined.lines[i].line;
        dl.candidate_index = refined.lines[i].candidate_index;
        dl.prob = refined.lines[i].prob;
        dl.kept_unrefined = refined.kept_unrefined[i] != 0;
        if (graph && node_ids)
            dl.self_harmony = graph->weight((*node_ids)[i], (*node_ids)[i]);
        out.push_back(dl);
    }
    return out;
}

}  // namespace

Detection detect(const std::string& image_id, const HoughGrid& grid,
                 const ScoredCandidates& scores, const HarmonyScorer& harmony,
                 const DetectionConfig& config) {
    Detection det;
    det.image_id = image_id;
    det.frame = grid.frame;

    const double stop = config.no_harmony && config.stop_prob == 0.0 ? 0.5 : config.stop_prob;
    const SelectionResult sel =
        select_and_remove(scores, grid, config.k, config.removal_radius, stop);
    const std::vector<SelectedLine> nodes = selected_lines(sel, scores, grid);

    if (config.no_harmony) {
        det.lines = finish(nodes, nullptr, nullptr, grid.frame, config.no_offset);
        return det;
    }

    const HarmonyGraph graph = build_graph(nodes, harmony);
    const Clique clique = max_weight_clique(graph, config.kappa);

    std::vector<SelectedLine> members;
    members.reserve(clique.members.size());
    for (int id : clique.members) members.push_back(nodes[size_t(id)]);

    det.lines = finish(members, &graph, &clique.members, grid.frame, config.no_offset);
    det.energy = clique.energy;
    det.fallback = clique.fallback;
    return det;
}

Detection detect_image(const std::string& image_id, const ImageU8& image,
                       const DetectionConfig& config) {
    const ImageFrame frame = image.frame();
    const HoughGrid grid = generate(frame, config.rho_bins, config.phi_bins);
    const ScoredCandidates scores = heuristic_line_scorer(gradient_magnitude(image), grid);
    const HeuristicHarmonyScorer harmony(color_features(image), frame, grid.rho_bin_width(),
                                         grid.phi_bin_width());
    return detect(image_id, grid, scores, harmony, config);
}

}  // namespace semline
