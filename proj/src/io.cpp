#include "semline/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace semline {

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt_fixed6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

// nearest point on the rectangle boundary [0,w-1]x[0,h-1]
Point snap_to_boundary(Point p, const ImageFrame& frame) {
    const double w = frame.width - 1.0;
    const double h = frame.height - 1.0;
    const double x = std::clamp(p.x, 0.0, w);
    const double y = std::clamp(p.y, 0.0, h);
    // distance to each edge from the clamped interior point
    const double d_left = x, d_right = w - x, d_top = y, d_bottom = h - y;
    const double best = std::min({d_left, d_right, d_top, d_bottom});
    if (best == d_left) return {0.0, y};
    if (best == d_right) return {w, y};
    if (best == d_top) return {x, 0.0};
    return {x, h};
}

double boundary_distance(Point p, const ImageFrame& frame) {
    const Point s = snap_to_boundary(p, frame);
    return std::hypot(p.x - s.x, p.y - s.y);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

double parse_double(const std::string& s, long row) {
    size_t pos = 0;
    double v;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw ParseError("bad number '" + s + "'", row);
    }
    if (pos != s.size()) throw ParseError("bad number '" + s + "'", row);
    return v;
}

long parse_long(const std::string& s, long row) {
    size_t pos = 0;
    long v;
    try {
        v = std::stol(s, &pos);
    } catch (const std::exception&) {
        throw ParseError("bad integer '" + s + "'", row);
    }
    if (pos != s.size()) throw ParseError("bad integer '" + s + "'", row);
    return v;
}

}  // namespace

std::vector<AnnotationRecord> load_annotations(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);

    std::string header;
    if (!std::getline(in, header) || header != kAnnotationMagic)
        throw ParseError(path + ": missing header '" + std::string(kAnnotationMagic) + "'", 1);

    std::vector<AnnotationRecord> records;
    std::string text;
    long row = 1;
    while (std::getline(in, text)) {
        ++row;
        if (text.empty() || text[0] == '#') continue;
        std::istringstream line(text);
        AnnotationRecord rec;
        if (!(line >> rec.image_id >> rec.frame.width >> rec.frame.height))
            throw ParseError(path + ": malformed record", row);
        if (rec.frame.width < 2 || rec.frame.height < 2)
            throw ParseError(path + ": frame smaller than 2x2", row);

        std::string quad;
        while (line >> quad) {
            const auto parts = split(quad, ',');
            if (parts.size() != 4) throw ParseError(path + ": endpoint quadruple expected", row);
            std::array<double, 4> ep;
            for (int i = 0; i < 4; ++i) ep[size_t(i)] = parse_double(parts[size_t(i)], row);

            Point a{ep[0], ep[1]}, b{ep[2], ep[3]};
            for (Point* p : {&a, &b}) {
                if (boundary_distance(*p, rec.frame) > 1.0) {
                    std::cerr << path << ":" << row << ": endpoint (" << p->x << "," << p->y
                              << ") off the boundary, snapping\n";
                    *p = snap_to_boundary(*p, rec.frame);
                    ++rec.snapped_endpoints;
                }
            }
            rec.endpoints.push_back({a.x, a.y, b.x, b.y});
            rec.lines.push_back(line_from_points(a, b, rec.frame));
        }
        records.push_back(std::move(rec));
    }
    return records;
}

void save_annotations(const std::string& path, const std::vector<AnnotationRecord>& records) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << kAnnotationMagic << "\n";
    for (const auto& rec : records) {
        out << rec.image_id << " " << rec.frame.width << " " << rec.frame.height;
        for (const auto& ep : rec.endpoints)
            out << " " << fmt_double(ep[0]) << "," << fmt_double(ep[1]) << ","
                << fmt_double(ep[2]) << "," << fmt_double(ep[3]);
        out << "\n";
    }
    if (!out) throw IoError("write failed: " + path);
}

AnnotationRecord record_from_detection(const Detection& det) {
    AnnotationRecord rec;
    rec.image_id = det.image_id;
    rec.frame = det.frame;
    for (const auto& dl : det.lines) {
        auto [a, b] = to_endpoints(dl.line, det.frame);
        rec.endpoints.push_back({a.x, a.y, b.x, b.y});
        rec.lines.push_back(dl.line);
    }
    return rec;
}

ScoreFile load_scores(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);

    std::string header;
    if (!std::getline(in, header) || header != kScoreMagic)
        throw ParseError(path + ": missing header '" + std::string(kScoreMagic) + "'", 1);

    ScoreFile sf;
    std::string text;
    long row = 1;
    bool sized = false;
    auto ensure_sized = [&]() {
        if (!sized) throw ParseError(path + ": grid header must precede data rows", row);
    };

    while (std::getline(in, text)) {
        ++row;
        if (text.empty() || text[0] == '#') continue;
        const auto f = split(text, ',');
        if (f[0] == "image" && f.size() == 2) {
            sf.image_id = f[1];
        } else if (f[0] == "frame" && f.size() == 3) {
            sf.frame.width = int(parse_long(f[1], row));
            sf.frame.height = int(parse_long(f[2], row));
        } else if (f[0] == "grid" && f.size() == 3) {
            sf.rho_bins = int(parse_long(f[1], row));
            sf.phi_bins = int(parse_long(f[2], row));
            if (sf.rho_bins < 1 || sf.phi_bins < 1)
                throw ParseError(path + ": grid bins must be >= 1", row);
            sf.candidates.prob.assign(size_t(sf.rho_bins) * sf.phi_bins, 0.0);
            sf.candidates.offset.assign(size_t(sf.rho_bins) * sf.phi_bins, {0.0, 0.0});
            sized = true;
        } else if (f[0] == "cand" && f.size() == 5) {
            ensure_sized();
            const long idx = parse_long(f[1], row);
            if (idx < 0 || idx >= long(sf.candidates.prob.size()))
                throw ParseError(path + ": candidate index out of range", row);
            const double prob = parse_double(f[2], row);
            if (prob < 0.0 || prob > 1.0)
                throw ParseError(path + ": probability outside [0,1]", row);
            sf.candidates.prob[size_t(idx)] = prob;
            sf.candidates.offset[size_t(idx)] = {parse_double(f[3], row),
                                                 parse_double(f[4], row)};
        } else if (f[0] == "pair" && f.size() == 4) {
            ensure_sized();
            const long i = parse_long(f[1], row);
            const long j = parse_long(f[2], row);
            if (i < 0 || j < 0 || i >= long(sf.candidates.prob.size()) ||
                j >= long(sf.candidates.prob.size()))
                throw ParseError(path + ": pair index out of range", row);
            const double h = parse_double(f[3], row);
            if (h < 0.0 || h > 1.0)
                throw ParseError(path + ": harmony score outside [0,1]", row);
            sf.pairs[{std::min(i, j), std::max(i, j)}] = h;
        } else {
            throw ParseError(path + ": unknown row '" + f[0] + "'", row);
        }
    }
    if (!sized) throw ParseError(path + ": no grid header");
    if (sf.frame.width < 2 || sf.frame.height < 2)
        throw ParseError(path + ": missing or bad frame header");
    return sf;
}

void save_scores(const std::string& path, const ScoreFile& scores) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << kScoreMagic << "\n";
    out << "image," << scores.image_id << "\n";
    out << "frame," << scores.frame.width << "," << scores.frame.height << "\n";
    out << "grid," << scores.rho_bins << "," << scores.phi_bins << "\n";
    for (size_t i = 0; i < scores.candidates.prob.size(); ++i) {
        if (scores.candidates.prob[i] == 0.0 && scores.candidates.offset[i].first == 0.0 &&
            scores.candidates.offset[i].second == 0.0)
            continue;
        out << "cand," << i << "," << fmt_double(scores.candidates.prob[i]) << ","
            << fmt_double(scores.candidates.offset[i].first) << ","
            << fmt_double(scores.candidates.offset[i].second) << "\n";
    }
    for (const auto& [key, h] : scores.pairs)
        out << "pair," << key.first << "," << key.second << "," << fmt_double(h) << "\n";
    if (!out) throw IoError("write failed: " + path);
}

ScoredCandidates scores_for_grid(const ScoreFile& scores, const HoughGrid& grid) {
    if (scores.rho_bins != grid.rho_bins || scores.phi_bins != grid.phi_bins)
        throw DimensionMismatch("score file grid " + std::to_string(scores.rho_bins) + "x" +
                                std::to_string(scores.phi_bins) + " does not match active grid " +
                                std::to_string(grid.rho_bins) + "x" +
                                std::to_string(grid.phi_bins));
    if (!(scores.frame == grid.frame))
        throw FrameMismatch("score file frame does not match active frame");
    ScoredCandidates out = scores.candidates;
    for (int k = 0; k < grid.size(); ++k)
        if (!grid.valid[size_t(k)]) out.prob[size_t(k)] = 0.0;
    return out;
}

std::string format_report(const EvalReport& report, MatchMetric metric) {
    std::ostringstream out;
    out << kReportMagic << "\n";
    out << "metric " << (metric == MatchMetric::miou ? "miou" : "ea") << "\n";
    out << "images " << report.hiou_per_image.size() << "\n";
    out << "auc_p " << fmt_fixed6(report.auc_p) << "\n";
    out << "auc_r " << fmt_fixed6(report.auc_r) << "\n";
    out << "auc_f " << fmt_fixed6(report.auc_f) << "\n";
    out << "hiou_mean " << fmt_fixed6(report.hiou_mean) << "\n";
    for (const auto& [id, h] : report.hiou_per_image)
        out << "image " << id << " hiou " << fmt_fixed6(h) << "\n";
    return out.str();
}

std::string format_curves_csv(const EvalReport& report) {
    std::ostringstream out;
    out << "tau,precision,recall,f\n";
    for (size_t i = 0; i < report.tau_grid.size(); ++i)
        out << fmt_fixed6(report.tau_grid[i]) << "," << fmt_fixed6(report.curve[i].precision)
            << "," << fmt_fixed6(report.curve[i].recall) << ","
            << fmt_fixed6(report.curve[i].f_measure) << "\n";
    return out.str();
}

void dump_candidates_csv(const std::string& path, const HoughGrid& grid) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << kCandidateMagic << "\n";
    out << "index,rho_index,phi_index,rho,phi,valid\n";
    for (int k = 0; k < grid.size(); ++k)
        out << k << "," << grid.rho_index(k) << "," << grid.phi_index(k) << ","
            << fmt_double(grid.candidates[size_t(k)].rho) << ","
            << fmt_double(grid.candidates[size_t(k)].phi) << "," << int(grid.valid[size_t(k)])
            << "\n";
    if (!out) throw IoError("write failed: " + path);
}

int render_overlay(const ImageU8& image, const std::vector<Line>& lines, ImageU8& out) {
    // RGB copy
    out.width = image.width;
    out.height = image.height;
    out.channels = 3;
    out.data.resize(size_t(image.width) * image.height * 3);
    for (int y = 0; y < image.height; ++y)
        for (int x = 0; x < image.width; ++x)
            for (int c = 0; c < 3; ++c)
                out.at(x, y, c) = image.at(x, y, image.channels == 3 ? c : 0);

    const ImageFrame frame = image.frame();
    int drawn = 0;
    for (const Line& line : lines) {
        if (!intersects(line, frame)) {
            std::cerr << "render: line (rho=" << line.rho << ", phi=" << line.phi
                      << ") outside the frame, skipped\n";
            continue;
        }
        auto [a, b] = to_endpoints(line, frame);
        const bool x_major = std::fabs(b.x - a.x) >= std::fabs(b.y - a.y);
        auto paint = [&](int x, int y) {
            if (x < 0 || y < 0 || x >= out.width || y >= out.height) return;
            out.at(x, y, 0) = 255;
            out.at(x, y, 1) = 0;
            out.at(x, y, 2) = 0;
        };
        for (auto [x, y] : pixels_along(line, frame)) {
            paint(x, y);
            // 2-px stroke: second pixel on the minor axis
            if (x_major)
                paint(x, y - 1);
            else
                paint(x - 1, y);
        }
        ++drawn;
    }
    return drawn;
}

}  // namespace semline
