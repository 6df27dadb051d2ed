#include "semline/mwcs.hpp"

#include <bit>
#include <limits>

namespace semline {

HarmonyGraph build_graph(const std::vector<SelectedLine>& lines, const HarmonyScorer& scorer) {
    const int k = int(lines.size());
    if (k < 1 || k > kMaxGraphNodes)
        throw std::invalid_argument("build_graph: node count " + std::to_string(k) +
                                    " outside [1," + std::to_string(kMaxGraphNodes) + "]");
    HarmonyGraph g;
    g.nodes = lines;
    g.weights.assign(size_t(k) * k, 0.0);
    for (int i = 0; i < k; ++i) {
        g.weights[size_t(i) * k + i] = scorer.self_score(lines[size_t(i)]);
        for (int j = i + 1; j < k; ++j) {
            const double h = scorer.pair_score(lines[size_t(i)], lines[size_t(j)]);
            g.weights[size_t(i) * k + j] = h;
            g.weights[size_t(j) * k + i] = h;
        }
    }
    return g;
}

double harmony_energy(const HarmonyGraph& graph, uint32_t members) {
    const int k = graph.size();
    double e = 0.0;
    for (int i = 0; i < k; ++i) {
        if (!(members & (1u << i))) continue;
        for (int j = i + 1; j < k; ++j)
            if (members & (1u << j)) e += graph.weight(i, j);
    }
    return e;
}

double harmony_energy(const HarmonyGraph& graph, const std::vector<int>& members) {
    uint32_t bits = 0;
    for (int m : members) {
        if (m < 0 || m >= graph.size())
            throw IndexOutOfRange("harmony_energy: member " + std::to_string(m));
        bits |= (1u << m);
    }
    return harmony_energy(graph, bits);
}

namespace {

std::vector<int> to_members(uint32_t bits) {
    std::vector<int> out;
    for (int i = 0; bits; ++i, bits >>= 1)
        if (bits & 1u) out.push_back(i);
    return out;
}

// true when a's sorted member list is lexicographically smaller than b's
bool lex_less(uint32_t a, uint32_t b) {
    while (a && b) {
        int la = std::countr_zero(a);
        int lb = std::countr_zero(b);
        if (la != lb) return la < lb;
        a &= a - 1;
        b &= b - 1;
    }
    return a == 0 && b != 0;
}

}  // namespace

Clique max_weight_clique(const HarmonyGraph& graph, double kappa) {
    const int k = graph.size();
    if (k < 1) throw std::invalid_argument("max_weight_clique: empty graph");
    if (kappa < 0.0 || kappa >= 1.0)
        throw std::invalid_argument("max_weight_clique: kappa outside [0,1)");

    uint32_t best_mask = 0;
    double best_energy = -1.0;
    int best_card = 0;

    const uint32_t all = (k == 32) ? ~0u : ((1u << k) - 1u);
    for (uint32_t mask = 1; mask <= all; ++mask) {
        const int card = std::popcount(mask);
        if (card < 2) continue;

        double energy = 0.0;
        double min_edge = std::numeric_limits<double>::infinity();
        bool feasible = true;
        for (int i = 0; i < k && feasible; ++i) {
            if (!(mask & (1u << i))) continue;
            for (int j = i + 1; j < k; ++j) {
                if (!(mask & (1u << j))) continue;
                const double w = graph.weight(i, j);
                if (w <= kappa) {
                    feasible = false;
                    break;
                }
                energy += w;
                min_edge = std::min(min_edge, w);
            }
        }
        if (!feasible) continue;

        const bool better =
            energy > best_energy ||
            (energy == best_energy &&
             (card > best_card || (card == best_card && lex_less(mask, best_mask))));
        if (better) {
            best_mask = mask;
            best_energy = energy;
            best_card = card;
        }
    }

    Clique clique;
    if (best_mask != 0) {
        clique.members = to_members(best_mask);
        clique.energy = best_energy;
        return clique;
    }

    // no feasible multi-node subset: maximal single-node clique by h_ii
    int best_node = 0;
    for (int i = 1; i < k; ++i)
        if (graph.weight(i, i) > graph.weight(best_node, best_node)) best_node = i;
    clique.members = {best_node};
    clique.energy = 0.0;
    clique.fallback = true;
    return clique;
}

RefineResult refine(const std::vector<SelectedLine>& lines, const ImageFrame& frame) {
    RefineResult result;
    result.lines.reserve(lines.size());
    result.kept_unrefined.assign(lines.size(), 0);
    for (size_t i = 0; i < lines.size(); ++i) {
        SelectedLine refined = lines[i];
        refined.line = canonical(lines[i].line.rho + lines[i].offset.first,
                                 lines[i].line.phi + lines[i].offset.second);
        if (!intersects(refined.line, frame)) {
            refined.line = lines[i].line;  // keep the unrefined line
            result.kept_unrefined[i] = 1;
        }
        result.lines.push_back(refined);
    }
    return result;
}

}  // namespace semline
