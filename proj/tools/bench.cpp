// Compares the OpenMP partition/metric kernels against the serial
// reference implementations and reports timings.

#include <chrono>
#include <cstdio>
#include <random>
#include <omp.h>

#include "semline/geometry.hpp"
#include "semline/metrics.hpp"

using namespace semline;

namespace {

double now_ms() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double, std::milli>(clock::now().time_since_epoch()).count();
}

std::vector<Line> random_lines(int count, const ImageFrame& frame, std::mt19937& rng) {
    std::uniform_real_distribution<double> rho(-frame.half_diagonal() * 0.8,
                                               frame.half_diagonal() * 0.8);
    std::uniform_real_distribution<double> phi(0.0, 3.14159265358979323846);
    std::vector<Line> lines;
    while (int(lines.size()) < count) {
        Line l{rho(rng), phi(rng)};
        if (intersects(l, frame)) lines.push_back(l);
    }
    return lines;
}

}  // namespace

int main() {
    std::mt19937 rng(7);
    const ImageFrame frame{1200, 900};
    const int reps = 5;

    std::printf("threads: %d\n", omp_get_max_threads());
    std::printf("%-28s %10s %10s %8s\n", "kernel", "serial ms", "omp ms", "speedup");

    for (int nlines : {2, 4, 8, 16}) {
        const auto lines = random_lines(nlines, frame, rng);

        double t0 = now_ms();
        RegionPartition ref;
        for (int r = 0; r < reps; ++r) ref = partition_serial(lines, frame);
        const double serial_ms = (now_ms() - t0) / reps;

        t0 = now_ms();
        RegionPartition par;
        for (int r = 0; r < reps; ++r) par = partition(lines, frame);
        const double omp_ms = (now_ms() - t0) / reps;

        if (ref.labels != par.labels || ref.areas != par.areas) {
            std::fprintf(stderr, "MISMATCH: partition kernels disagree at %d lines\n", nlines);
            return 1;
        }
        char name[64];
        std::snprintf(name, sizeof(name), "partition (%d lines)", nlines);
        std::printf("%-28s %10.2f %10.2f %8.2fx\n", name, serial_ms, omp_ms,
                    serial_ms / omp_ms);
    }

    {
        const auto det = random_lines(6, frame, rng);
        const auto gt = random_lines(6, frame, rng);
        double t0 = now_ms();
        double h = 0.0;
        for (int r = 0; r < reps; ++r) h = hiou(det, gt, frame);
        const double ms = (now_ms() - t0) / reps;
        std::printf("%-28s %10s %10.2f %8s  (hiou=%.4f)\n", "hiou (6 vs 6 lines)", "-", ms, "-",
                    h);
    }
    return 0;
}
