#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "semline/geometry.hpp"

namespace semline {

// 8-bit raster, 1 (grayscale) or 3 (RGB) channels, interleaved.
struct ImageU8 {
    int width = 0;
    int height = 0;
    int channels = 0;
    std::vector<uint8_t> data;

    ImageFrame frame() const { return {width, height}; }
    uint8_t at(int x, int y, int c = 0) const {
        return data[(size_t(y) * width + x) * channels + c];
    }
    uint8_t& at(int x, int y, int c = 0) {
        return data[(size_t(y) * width + x) * channels + c];
    }
};

// Binary PGM (P5) or PPM (P6), maxval <= 255.
ImageU8 read_pnm(const std::string& path);
void write_ppm(const std::string& path, const ImageU8& img);

// Per-pixel feature raster with C scalar planes.
struct FeatureMap {
    int width = 0;
    int height = 0;
    std::vector<std::vector<double>> planes;  // each height * width, row-major

    ImageFrame frame() const { return {width, height}; }
    int channel_count() const { return int(planes.size()); }
    double at(int c, int x, int y) const { return planes[c][size_t(y) * width + x]; }
};

FeatureMap constant_map(const ImageFrame& frame, int channels, double value);

// Color planes scaled to [0,1]; grayscale input yields one plane.
FeatureMap color_features(const ImageU8& img);

// 3x3 central-difference gradient magnitude of the grayscale image
// (borders replicated), single plane.
FeatureMap gradient_magnitude(const ImageU8& img);

}  // namespace semline
