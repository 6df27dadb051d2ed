#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "semline/hough.hpp"
#include "semline/image.hpp"
#include "semline/metrics.hpp"
#include "semline/pipeline.hpp"
#include "semline/scoring.hpp"

namespace semline {

inline constexpr const char* kAnnotationMagic = "semline-annotations v1";
inline constexpr const char* kScoreMagic = "semline-scores v1";
inline constexpr const char* kReportMagic = "semline-report v1";
inline constexpr const char* kCandidateMagic = "semline-candidates v1";

// One image record: endpoints as annotated plus the canonical polar form
// fitted at load time.
struct AnnotationRecord {
    std::string image_id;
    ImageFrame frame;
    std::vector<std::array<double, 4>> endpoints;  // x1,y1,x2,y2
    std::vector<Line> lines;
    int snapped_endpoints = 0;  // endpoints moved onto the boundary at load
};

std::vector<AnnotationRecord> load_annotations(const std::string& path);
void save_annotations(const std::string& path, const std::vector<AnnotationRecord>& records);

AnnotationRecord record_from_detection(const Detection& det);

// Candidate scores (and optional harmony pairs) for one image.
struct ScoreFile {
    std::string image_id;
    ImageFrame frame;
    int rho_bins = 0;
    int phi_bins = 0;
    ScoredCandidates candidates;
    std::map<std::pair<int, int>, double> pairs;  // canonical (min,max) index keys
};

ScoreFile load_scores(const std::string& path);
void save_scores(const std::string& path, const ScoreFile& scores);

// Rejects a header mismatch against the active grid; returns the scores
// with invalid-candidate probabilities zeroed.
ScoredCandidates scores_for_grid(const ScoreFile& scores, const HoughGrid& grid);

std::string format_report(const EvalReport& report, MatchMetric metric);
std::string format_curves_csv(const EvalReport& report);

void dump_candidates_csv(const std::string& path, const HoughGrid& grid);

// Draws 2-px-wide strokes over a copy of the image; lines outside the
// frame are skipped (returned count = lines drawn).
int render_overlay(const ImageU8& image, const std::vector<Line>& lines, ImageU8& out);

}  // namespace semline
