#include "semline/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace semline {

namespace {
constexpr double kPi = 3.14159265358979323846;

// intersection / union counts of half-plane sides of two lines
struct SideCounts {
    // counts[sa][sb]: pixels on side sa of line a and side sb of line b
    int64_t counts[2][2] = {{0, 0}, {0, 0}};
};

SideCounts side_counts(const Line& a, const Line& b, const ImageFrame& frame) {
    SideCounts sc;
    const double anx = a.nx(), any_ = a.ny();
    const double aoff = a.rho + frame.cx() * anx + frame.cy() * any_;
    const double bnx = b.nx(), bny = b.ny();
    const double boff = b.rho + frame.cx() * bnx + frame.cy() * bny;

    int64_t c00 = 0, c01 = 0, c10 = 0, c11 = 0;
#pragma omp parallel for schedule(static) reduction(+ : c00, c01, c10, c11)
    for (int y = 0; y < frame.height; ++y)
        for (int x = 0; x < frame.width; ++x) {
            const int sa = (x * anx + y * any_ - aoff >= -1e-9) ? 1 : 0;
            const int sb = (x * bnx + y * bny - boff >= -1e-9) ? 1 : 0;
            if (sa)
                sb ? ++c11 : ++c10;
            else
                sb ? ++c01 : ++c00;
        }
    sc.counts[0][0] = c00;
    sc.counts[0][1] = c01;
    sc.counts[1][0] = c10;
    sc.counts[1][1] = c11;
    return sc;
}

double iou_from_counts(int64_t inter, int64_t area_a, int64_t area_b) {
    const int64_t uni = area_a + area_b - inter;
    return uni == 0 ? 0.0 : double(inter) / double(uni);
}

}  // namespace

double line_miou(const Line& a, const Line& b, const ImageFrame& frame) {
    if (!intersects(a, frame) || !intersects(b, frame))
        throw NoIntersection("line_miou: line misses the frame");

    const SideCounts sc = side_counts(a, b, frame);
    const int64_t a0 = sc.counts[0][0] + sc.counts[0][1];
    const int64_t a1 = sc.counts[1][0] + sc.counts[1][1];
    const int64_t b0 = sc.counts[0][0] + sc.counts[1][0];
    const int64_t b1 = sc.counts[0][1] + sc.counts[1][1];

    const double straight = 0.5 * (iou_from_counts(sc.counts[0][0], a0, b0) +
                                   iou_from_counts(sc.counts[1][1], a1, b1));
    const double crossed = 0.5 * (iou_from_counts(sc.counts[0][1], a0, b1) +
                                  iou_from_counts(sc.counts[1][0], a1, b0));
    return std::max(straight, crossed);
}

double ea_score(const Line& a, const Line& b, const ImageFrame& frame) {
    auto [a1, a2] = to_endpoints(a, frame);
    auto [b1, b2] = to_endpoints(b, frame);

    double dtheta = std::fabs(a.phi - b.phi);
    dtheta = std::min(dtheta, kPi - dtheta);  // acute angle between lines
    const double s_theta = std::max(0.0, 1.0 - dtheta / (kPi / 2.0));

    const double mid_ax = 0.5 * (a1.x + a2.x), mid_ay = 0.5 * (a1.y + a2.y);
    const double mid_bx = 0.5 * (b1.x + b2.x), mid_by = 0.5 * (b1.y + b2.y);
    const double dist = std::hypot(mid_ax - mid_bx, mid_ay - mid_by);
    const double s_d = std::max(0.0, 1.0 - dist / frame.diagonal());
    return s_d * s_theta;
}

MatchResult match_lines(const std::vector<Line>& detected, const std::vector<Line>& ground_truth,
                        const ImageFrame& frame, MatchMetric metric, double tau) {
    if (tau < 0.0 || tau > 1.0) throw std::invalid_argument("match_lines: tau outside [0,1]");

    struct ScoredPair {
        double score;
        int det;
        int gt;
    };
    std::vector<ScoredPair> pairs;
    for (int d = 0; d < int(detected.size()); ++d)
        for (int g = 0; g < int(ground_truth.size()); ++g) {
            const double s = metric == MatchMetric::miou
                                 ? line_miou(detected[size_t(d)], ground_truth[size_t(g)], frame)
                                 : ea_score(detected[size_t(d)], ground_truth[size_t(g)], frame);
            if (s > tau) pairs.push_back({s, d, g});
        }
    std::sort(pairs.begin(), pairs.end(), [](const ScoredPair& x, const ScoredPair& y) {
        return std::tie(y.score, x.det, x.gt) < std::tie(x.score, y.det, y.gt);
    });

    std::vector<uint8_t> det_used(detected.size(), 0), gt_used(ground_truth.size(), 0);
    MatchResult mr;
    for (const auto& p : pairs) {
        if (det_used[size_t(p.det)] || gt_used[size_t(p.gt)]) continue;
        det_used[size_t(p.det)] = 1;
        gt_used[size_t(p.gt)] = 1;
        mr.assignment.emplace_back(p.det, p.gt);
    }
    mr.n_correct = int(mr.assignment.size());
    mr.n_false_pos = int(detected.size()) - mr.n_correct;
    mr.n_false_neg = int(ground_truth.size()) - mr.n_correct;
    return mr;
}

PrecisionRecall precision_recall(int n_correct, int n_false_pos, int n_false_neg) {
    PrecisionRecall pr;
    const int det = n_correct + n_false_pos;
    const int gt = n_correct + n_false_neg;
    pr.precision = det == 0 ? 1.0 : double(n_correct) / det;
    pr.recall = gt == 0 ? 1.0 : double(n_correct) / gt;
    pr.f_measure = (pr.precision + pr.recall) == 0.0
                       ? 0.0
                       : 2.0 * pr.precision * pr.recall / (pr.precision + pr.recall);
    return pr;
}

double auc(const std::vector<double>& tau_grid, const std::vector<double>& values) {
    if (tau_grid.size() < 2) throw GridTooSmall("auc: need at least 2 grid points");
    if (tau_grid.size() != values.size())
        throw DimensionMismatch("auc: grid and value counts differ");
    for (size_t i = 1; i < tau_grid.size(); ++i)
        if (tau_grid[i] <= tau_grid[i - 1])
            throw std::invalid_argument("auc: tau grid not strictly increasing");

    double area = 0.0;
    for (size_t i = 1; i < tau_grid.size(); ++i)
        area += 0.5 * (values[i] + values[i - 1]) * (tau_grid[i] - tau_grid[i - 1]);
    return area / (tau_grid.back() - tau_grid.front());
}

std::vector<double> default_tau_grid() {
    std::vector<double> grid;
    for (int i = 1; i <= 49; ++i) grid.push_back(i * 0.02);
    return grid;
}

double hiou(const std::vector<Line>& detected, const std::vector<Line>& ground_truth,
            const ImageFrame& frame, double metric_scale) {
    if (metric_scale < 1.0) throw std::invalid_argument("hiou: metric_scale must be >= 1");

    ImageFrame eval_frame = frame;
    auto scale_lines = [&](const std::vector<Line>& in) {
        std::vector<Line> out;
        out.reserve(in.size());
        for (const Line& l : in) out.push_back(Line{l.rho / metric_scale, l.phi});
        return out;
    };
    std::vector<Line> det = detected, gt = ground_truth;
    if (metric_scale > 1.0) {
        eval_frame.width = std::max(2, int(std::lround(frame.width / metric_scale)));
        eval_frame.height = std::max(2, int(std::lround(frame.height / metric_scale)));
        det = scale_lines(detected);
        gt = scale_lines(ground_truth);
    }

    const RegionPartition s = partition(det, eval_frame);
    const RegionPartition t = partition(gt, eval_frame);
    const int n = s.region_count;
    const int m = t.region_count;

    // joint histogram of (s label, t label)
    std::vector<int64_t> inter(size_t(n) * m, 0);
    for (size_t i = 0; i < s.labels.size(); ++i)
        ++inter[size_t(s.labels[i]) * m + t.labels[i]];

    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        double best = 0.0;
        for (int k = 0; k < m; ++k)
            best = std::max(best, iou_from_counts(inter[size_t(i) * m + k], s.areas[size_t(i)],
                                                  t.areas[size_t(k)]));
        total += best;
    }
    for (int j = 0; j < m; ++j) {
        double best = 0.0;
        for (int k = 0; k < n; ++k)
            best = std::max(best, iou_from_counts(inter[size_t(k) * m + j], s.areas[size_t(k)],
                                                  t.areas[size_t(j)]));
        total += best;
    }
    return total / double(n + m);
}

EvalReport evaluate(const std::vector<EvalImage>& images, MatchMetric metric,
                    const std::vector<double>& tau_grid, double metric_scale) {
    EvalReport report;
    report.tau_grid = tau_grid;

    // order-independent aggregation
    std::vector<const EvalImage*> sorted;
    sorted.reserve(images.size());
    for (const auto& img : images) sorted.push_back(&img);
    std::sort(sorted.begin(), sorted.end(),
              [](const EvalImage* a, const EvalImage* b) { return a->image_id < b->image_id; });

    const int ni = int(sorted.size());
    std::vector<double> hious(size_t(ni), 0.0);
    std::vector<std::vector<MatchResult>> matches(static_cast<size_t>(ni));

#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < ni; ++i) {
        const EvalImage& img = *sorted[size_t(i)];
        hious[size_t(i)] = hiou(img.detected, img.ground_truth, img.frame, metric_scale);
        matches[size_t(i)].reserve(tau_grid.size());
        for (double tau : tau_grid)
            matches[size_t(i)].push_back(
                match_lines(img.detected, img.ground_truth, img.frame, metric, tau));
    }

    for (int i = 0; i < ni; ++i)
        report.hiou_per_image.emplace_back(sorted[size_t(i)]->image_id, hious[size_t(i)]);
    double hsum = 0.0;
    for (double h : hious) hsum += h;
    report.hiou_mean = ni == 0 ? 0.0 : hsum / ni;

    std::vector<double> p_curve, r_curve, f_curve;
    for (size_t ti = 0; ti < tau_grid.size(); ++ti) {
        int nl = 0, ne = 0, nm = 0;
        for (int i = 0; i < ni; ++i) {
            nl += matches[size_t(i)][ti].n_correct;
            ne += matches[size_t(i)][ti].n_false_pos;
            nm += matches[size_t(i)][ti].n_false_neg;
        }
        const PrecisionRecall pr = precision_recall(nl, ne, nm);
        report.curve.push_back(pr);
        p_curve.push_back(pr.precision);
        r_curve.push_back(pr.recall);
        f_curve.push_back(pr.f_measure);
    }
    report.auc_p = auc(tau_grid, p_curve);
    report.auc_r = auc(tau_grid, r_curve);
    report.auc_f = auc(tau_grid, f_curve);
    return report;
}

}  // namespace semline
