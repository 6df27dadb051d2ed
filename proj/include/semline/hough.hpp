#pragma once

#include <vector>

#include "semline/geometry.hpp"

namespace semline {

// Uniform quantization of the (rho, phi) space. Candidate k sits at
// (rho_index, phi_index) = (k / phi_bins, k % phi_bins). rho values are bin
// centers in [-rho_max, rho_max]; phi values start at 0 with spacing
// pi / phi_bins, so phi never reaches the duplicate angle pi.
struct HoughGrid {
    ImageFrame frame;
    int rho_bins = 0;
    int phi_bins = 0;
    double rho_max = 0.0;
    std::vector<Line> candidates;  // size rho_bins * phi_bins
    std::vector<uint8_t> valid;    // 0 when the candidate misses the frame

    int size() const { return rho_bins * phi_bins; }
    int rho_index(int k) const { return k / phi_bins; }
    int phi_index(int k) const { return k % phi_bins; }
    int index_of(int ri, int pi_) const { return ri * phi_bins + pi_; }

    double rho_bin_width() const { return 2.0 * rho_max / rho_bins; }
    double phi_bin_width() const;
};

HoughGrid generate(const ImageFrame& frame, int rho_bins, int phi_bins);

// Indices within Chebyshev radius of a candidate: rho indices clamp at the
// grid edge, phi indices wrap (phi is periodic). Includes the center.
std::vector<int> neighborhood(const HoughGrid& grid, int index, int radius);

// Chebyshev distance between two candidates on the grid, phi wrapping.
int grid_chebyshev(const HoughGrid& grid, int a, int b);

}  // namespace semline
