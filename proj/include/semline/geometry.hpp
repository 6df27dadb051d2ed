#pragma once

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "semline/errors.hpp"

namespace semline {

struct ImageFrame {
    int width = 0;
    int height = 0;

    double cx() const { return (width - 1) * 0.5; }
    double cy() const { return (height - 1) * 0.5; }
    double diagonal() const { return std::hypot(double(width - 1), double(height - 1)); }
    double half_diagonal() const { return 0.5 * diagonal(); }

    bool operator==(const ImageFrame&) const = default;
};

struct Point {
    double x = 0.0;
    double y = 0.0;
};

// A line in polar form. rho is the signed distance from the image center
// along the unit normal n = (sin phi, -cos phi); phi is in [0, pi).
// Points p on the line satisfy (p - center) . n = rho.
struct Line {
    double rho = 0.0;
    double phi = 0.0;

    double nx() const { return std::sin(phi); }
    double ny() const { return -std::cos(phi); }
    double dx() const { return std::cos(phi); }
    double dy() const { return std::sin(phi); }
};

// Folds (rho, phi) into the canonical range phi in [0, pi), flipping rho's
// sign for each half-turn: (rho, phi + pi) == (-rho, phi).
Line canonical(double rho, double phi);

// Fits the canonical (rho, phi) of the infinite line through two points.
Line line_from_points(Point a, Point b, const ImageFrame& frame);

// Signed distance of a point from the line (positive on the normal side).
double signed_distance(const Line& line, const ImageFrame& frame, double px, double py);

bool intersects(const Line& line, const ImageFrame& frame);

// Intersection of the infinite line with the image rectangle
// [0, width-1] x [0, height-1], ordered lexicographically (x, then y).
// Throws NoIntersection if the line misses the rectangle.
std::pair<Point, Point> to_endpoints(const Line& line, const ImageFrame& frame);

// Rasterized pixel trace between the clipped endpoints, one pixel per unit
// step along the dominant axis. No duplicates; ordered from the first
// endpoint to the second.
std::vector<std::pair<int, int>> pixels_along(const Line& line, const ImageFrame& frame);

struct RegionPartition {
    int width = 0;
    int height = 0;
    std::vector<int32_t> labels;  // row-major, height * width
    int region_count = 0;
    std::vector<int64_t> areas;   // indexed by region id

    int32_t at(int x, int y) const { return labels[size_t(y) * width + x]; }
};

inline constexpr int kMaxPartitionLines = 16;

// Labels every pixel by the sign vector of half-plane tests against all
// lines; labels compacted to consecutive ids, ordered by sign mask.
// Parallel (OpenMP) kernel; partition_serial is the reference version.
RegionPartition partition(const std::vector<Line>& lines, const ImageFrame& frame);
RegionPartition partition_serial(const std::vector<Line>& lines, const ImageFrame& frame);

// Pixel mask (0/1 per pixel) of one region.
std::vector<uint8_t> region_mask(const RegionPartition& p, int region_id);

// |a & b| / |a | b| over equally sized masks. Throws EmptyUnion when both
// masks are empty.
double region_iou(const std::vector<uint8_t>& a, const std::vector<uint8_t>& b);

// Half-plane side of a pixel center: 1 on the non-negative side of the
// line, 0 otherwise. Values within 1e-9 of zero count as non-negative.
int halfplane_side(const Line& line, const ImageFrame& frame, double px, double py);

}  // namespace semline
