#include "semline/hough.hpp"

#include <algorithm>
#include <cmath>

namespace semline {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double HoughGrid::phi_bin_width() const { return kPi / phi_bins; }

HoughGrid generate(const ImageFrame& frame, int rho_bins, int phi_bins) {
    if (rho_bins < 1 || phi_bins < 1)
        throw std::invalid_argument("generate: bins must be >= 1");

    HoughGrid grid;
    grid.frame = frame;
    grid.rho_bins = rho_bins;
    grid.phi_bins = phi_bins;
    grid.rho_max = frame.half_diagonal();

    const double drho = 2.0 * grid.rho_max / rho_bins;
    const double dphi = kPi / phi_bins;

    grid.candidates.reserve(size_t(rho_bins) * phi_bins);
    grid.valid.reserve(size_t(rho_bins) * phi_bins);
    for (int ri = 0; ri < rho_bins; ++ri) {
        const double rho = -grid.rho_max + (ri + 0.5) * drho;
        for (int pi_ = 0; pi_ < phi_bins; ++pi_) {
            Line cand{rho, pi_ * dphi};
            grid.candidates.push_back(cand);
            grid.valid.push_back(intersects(cand, frame) ? 1 : 0);
        }
    }
    return grid;
}

std::vector<int> neighborhood(const HoughGrid& grid, int index, int radius) {
    if (index < 0 || index >= grid.size())
        throw IndexOutOfRange("neighborhood: index " + std::to_string(index));
    if (radius < 0) throw std::invalid_argument("neighborhood: negative radius");

    const int ri = grid.rho_index(index);
    const int pi_ = grid.phi_index(index);
    const int r_lo = std::max(0, ri - radius);
    const int r_hi = std::min(grid.rho_bins - 1, ri + radius);

    std::vector<int> out;
    out.reserve(size_t(2 * radius + 1) * size_t(2 * radius + 1));
    const int pspan = std::min(radius, grid.phi_bins / 2);  // avoid double-wrap
    for (int r = r_lo; r <= r_hi; ++r) {
        if (2 * radius + 1 >= grid.phi_bins) {
            for (int p = 0; p < grid.phi_bins; ++p) out.push_back(grid.index_of(r, p));
            continue;
        }
        for (int dp = -pspan; dp <= pspan; ++dp) {
            int p = ((pi_ + dp) % grid.phi_bins + grid.phi_bins) % grid.phi_bins;
            out.push_back(grid.index_of(r, p));
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

int grid_chebyshev(const HoughGrid& grid, int a, int b) {
    const int dr = std::abs(grid.rho_index(a) - grid.rho_index(b));
    int dp = std::abs(grid.phi_index(a) - grid.phi_index(b));
    dp = std::min(dp, grid.phi_bins - dp);
    return std::max(dr, dp);
}

}  // namespace semline
