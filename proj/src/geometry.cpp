#include "semline/geometry.hpp"

#include <algorithm>
#include <limits>
#include <map>

namespace semline {

namespace {
constexpr double kSideEps = 1e-9;
constexpr double kPi = 3.14159265358979323846;
}  // namespace

Line canonical(double rho, double phi) {
    // reduce phi into [0, pi), flipping rho once per half-turn
    double turns = std::floor(phi / kPi);
    double folded = phi - turns * kPi;
    if (folded >= kPi) {  // rounding at the boundary
        folded -= kPi;
        turns += 1.0;
    }
    if (folded < 0.0) {
        folded += kPi;
        turns -= 1.0;
    }
    double r = (std::fmod(std::fabs(turns), 2.0) < 0.5) ? rho : -rho;
    return Line{r, folded};
}

Line line_from_points(Point a, Point b, const ImageFrame& frame) {
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    if (std::hypot(dx, dy) < 1e-12)
        throw std::invalid_argument("line_from_points: coincident points");
    double phi = std::atan2(dy, dx);
    // direction and its negation give the same line
    double rho_raw = (a.x - frame.cx()) * std::sin(phi) - (a.y - frame.cy()) * std::cos(phi);
    return canonical(rho_raw, phi);
}

double signed_distance(const Line& line, const ImageFrame& frame, double px, double py) {
    return (px - frame.cx()) * line.nx() + (py - frame.cy()) * line.ny() - line.rho;
}

namespace {

// Liang-Barsky parameter interval of the line against the rectangle
// [0, w-1] x [0, h-1]; returns false when empty.
bool clip_interval(const Line& line, const ImageFrame& frame, double& t0, double& t1) {
    const double ox = frame.cx() + line.rho * line.nx();
    const double oy = frame.cy() + line.rho * line.ny();
    const double dx = line.dx();
    const double dy = line.dy();

    t0 = -std::numeric_limits<double>::infinity();
    t1 = std::numeric_limits<double>::infinity();

    auto clip_axis = [&](double o, double d, double lo, double hi) {
        if (std::fabs(d) < 1e-15) return o >= lo - 1e-9 && o <= hi + 1e-9;
        double ta = (lo - o) / d;
        double tb = (hi - o) / d;
        if (ta > tb) std::swap(ta, tb);
        t0 = std::max(t0, ta);
        t1 = std::min(t1, tb);
        return true;
    };

    if (!clip_axis(ox, dx, 0.0, frame.width - 1.0)) return false;
    if (!clip_axis(oy, dy, 0.0, frame.height - 1.0)) return false;
    return t0 <= t1 + 1e-9;
}

}  // namespace

bool intersects(const Line& line, const ImageFrame& frame) {
    double t0, t1;
    return clip_interval(line, frame, t0, t1);
}

std::pair<Point, Point> to_endpoints(const Line& line, const ImageFrame& frame) {
    double t0, t1;
    if (!clip_interval(line, frame, t0, t1))
        throw NoIntersection("line (rho=" + std::to_string(line.rho) +
                             ", phi=" + std::to_string(line.phi) + ") misses the frame");

    const double ox = frame.cx() + line.rho * line.nx();
    const double oy = frame.cy() + line.rho * line.ny();
    auto at = [&](double t) {
        Point p{ox + t * line.dx(), oy + t * line.dy()};
        p.x = std::clamp(p.x, 0.0, frame.width - 1.0);
        p.y = std::clamp(p.y, 0.0, frame.height - 1.0);
        return p;
    };
    Point a = at(t0);
    Point b = at(t1);
    if (a.x > b.x || (a.x == b.x && a.y > b.y)) std::swap(a, b);
    return {a, b};
}

std::vector<std::pair<int, int>> pixels_along(const Line& line, const ImageFrame& frame) {
    auto [a, b] = to_endpoints(line, frame);
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;

    std::vector<std::pair<int, int>> out;
    const bool x_major = std::fabs(dx) >= std::fabs(dy);

    auto clampi = [](long v, int hi) { return int(std::clamp(v, 0L, long(hi))); };

    if (x_major) {
        int x0 = clampi(std::lround(a.x), frame.width - 1);
        int x1 = clampi(std::lround(b.x), frame.width - 1);
        const int step = x1 >= x0 ? 1 : -1;
        out.reserve(size_t(std::abs(x1 - x0)) + 1);
        for (int x = x0;; x += step) {
            double t = std::fabs(dx) < 1e-12 ? 0.0 : (x - a.x) / dx;
            int y = clampi(std::lround(a.y + t * dy), frame.height - 1);
            out.emplace_back(x, y);
            if (x == x1) break;
        }
    } else {
        int y0 = clampi(std::lround(a.y), frame.height - 1);
        int y1 = clampi(std::lround(b.y), frame.height - 1);
        const int step = y1 >= y0 ? 1 : -1;
        out.reserve(size_t(std::abs(y1 - y0)) + 1);
        for (int y = y0;; y += step) {
            double t = (y - a.y) / dy;
            int x = clampi(std::lround(a.x + t * dx), frame.width - 1);
            out.emplace_back(x, y);
            if (y == y1) break;
        }
    }
    return out;
}

int halfplane_side(const Line& line, const ImageFrame& frame, double px, double py) {
    const double v = signed_distance(line, frame, px, py);
    return v >= -kSideEps ? 1 : 0;
}

namespace {

RegionPartition partition_impl(const std::vector<Line>& lines, const ImageFrame& frame,
                               bool parallel) {
    if (lines.size() > size_t(kMaxPartitionLines))
        throw TooManyLines("partition: " + std::to_string(lines.size()) + " lines exceeds cap " +
                           std::to_string(kMaxPartitionLines));

    const int w = frame.width;
    const int h = frame.height;
    const int m = int(lines.size());

    std::vector<uint32_t> masks(size_t(w) * h);

    // precompute per-line normals and offsets
    std::vector<double> nx(m), ny(m), off(m);
    for (int i = 0; i < m; ++i) {
        nx[i] = lines[i].nx();
        ny[i] = lines[i].ny();
        off[i] = lines[i].rho + frame.cx() * nx[i] + frame.cy() * ny[i];
    }

#pragma omp parallel for schedule(static) if (parallel)
    for (int y = 0; y < h; ++y) {
        uint32_t* row = masks.data() + size_t(y) * w;
        for (int x = 0; x < w; ++x) {
            uint32_t bits = 0;
            for (int i = 0; i < m; ++i) {
                double v = x * nx[i] + y * ny[i] - off[i];
                if (v >= -kSideEps) bits |= (1u << i);
            }
            row[x] = bits;
        }
    }

    // compact sign classes to consecutive ids in row-major first-appearance
    // order; independent of line duplication and thread count
    std::map<uint32_t, int32_t> remap;
    RegionPartition part;
    part.width = w;
    part.height = h;
    part.labels.resize(masks.size());
    for (size_t i = 0; i < masks.size(); ++i) {
        auto [it, fresh] = remap.emplace(masks[i], int32_t(remap.size()));
        int32_t id = it->second;
        part.labels[i] = id;
        if (fresh)
            part.areas.push_back(1);
        else
            ++part.areas[size_t(id)];
    }
    part.region_count = int(part.areas.size());
    return part;
}

}  // namespace

RegionPartition partition(const std::vector<Line>& lines, const ImageFrame& frame) {
    return partition_impl(lines, frame, true);
}

RegionPartition partition_serial(const std::vector<Line>& lines, const ImageFrame& frame) {
    return partition_impl(lines, frame, false);
}

std::vector<uint8_t> region_mask(const RegionPartition& p, int region_id) {
    std::vector<uint8_t> mask(p.labels.size());
    for (size_t i = 0; i < p.labels.size(); ++i) mask[i] = p.labels[i] == region_id ? 1 : 0;
    return mask;
}

double region_iou(const std::vector<uint8_t>& a, const std::vector<uint8_t>& b) {
    if (a.size() != b.size())
        throw DimensionMismatch("region_iou: mask sizes differ");
    int64_t inter = 0, uni = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        inter += (a[i] && b[i]);
        uni += (a[i] || b[i]);
    }
    if (uni == 0) throw EmptyUnion("region_iou: both masks empty");
    return double(inter) / double(uni);
}

}  // namespace semline
