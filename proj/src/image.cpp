#include "semline/image.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>

#include "semline/errors.hpp"

namespace semline {

namespace {

int read_pnm_int(std::istream& in) {
    // skip whitespace and '#' comments
    int ch = in.get();
    while (ch != EOF) {
        if (ch == '#') {
            while (ch != EOF && ch != '\n') ch = in.get();
        } else if (!std::isspace(ch)) {
            break;
        }
        ch = in.get();
    }
    if (ch == EOF || !std::isdigit(ch)) throw IoError("pnm: malformed header");
    int value = 0;
    while (ch != EOF && std::isdigit(ch)) {
        value = value * 10 + (ch - '0');
        ch = in.get();
    }
    return value;
}

}  // namespace

ImageU8 read_pnm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);

    char m0 = char(in.get());
    char m1 = char(in.get());
    int channels;
    if (m0 == 'P' && m1 == '5')
        channels = 1;
    else if (m0 == 'P' && m1 == '6')
        channels = 3;
    else
        throw IoError(path + ": not a binary PGM/PPM (magic " + std::string{m0, m1} + ")");

    ImageU8 img;
    img.channels = channels;
    img.width = read_pnm_int(in);
    img.height = read_pnm_int(in);
    int maxval = read_pnm_int(in);
    if (img.width < 2 || img.height < 2) throw IoError(path + ": frame smaller than 2x2");
    if (maxval <= 0 || maxval > 255) throw IoError(path + ": unsupported maxval");

    img.data.resize(size_t(img.width) * img.height * channels);
    in.read(reinterpret_cast<char*>(img.data.data()), std::streamsize(img.data.size()));
    if (in.gcount() != std::streamsize(img.data.size()))
        throw IoError(path + ": truncated pixel data");
    return img;
}

void write_ppm(const std::string& path, const ImageU8& img) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << "P6\n" << img.width << " " << img.height << "\n255\n";
    if (img.channels == 3) {
        out.write(reinterpret_cast<const char*>(img.data.data()),
                  std::streamsize(img.data.size()));
    } else {
        std::vector<uint8_t> rgb(size_t(img.width) * img.height * 3);
        for (size_t i = 0; i < img.data.size(); ++i)
            rgb[3 * i] = rgb[3 * i + 1] = rgb[3 * i + 2] = img.data[i];
        out.write(reinterpret_cast<const char*>(rgb.data()), std::streamsize(rgb.size()));
    }
    if (!out) throw IoError("write failed: " + path);
}

FeatureMap constant_map(const ImageFrame& frame, int channels, double value) {
    FeatureMap fm;
    fm.width = frame.width;
    fm.height = frame.height;
    fm.planes.assign(size_t(channels),
                     std::vector<double>(size_t(frame.width) * frame.height, value));
    return fm;
}

FeatureMap color_features(const ImageU8& img) {
    FeatureMap fm;
    fm.width = img.width;
    fm.height = img.height;
    fm.planes.assign(size_t(img.channels),
                     std::vector<double>(size_t(img.width) * img.height));
    for (int c = 0; c < img.channels; ++c)
        for (int y = 0; y < img.height; ++y)
            for (int x = 0; x < img.width; ++x)
                fm.planes[c][size_t(y) * img.width + x] = img.at(x, y, c) / 255.0;
    return fm;
}

FeatureMap gradient_magnitude(const ImageU8& img) {
    const int w = img.width;
    const int h = img.height;
    std::vector<double> gray(size_t(w) * h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            double v = 0.0;
            for (int c = 0; c < img.channels; ++c) v += img.at(x, y, c);
            gray[size_t(y) * w + x] = v / (255.0 * img.channels);
        }

    FeatureMap fm;
    fm.width = w;
    fm.height = h;
    fm.planes.assign(1, std::vector<double>(size_t(w) * h));
    auto g = [&](int x, int y) {
        x = std::clamp(x, 0, w - 1);
        y = std::clamp(y, 0, h - 1);
        return gray[size_t(y) * w + x];
    };
#pragma omp parallel for schedule(static)
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            double gx = 0.5 * (g(x + 1, y) - g(x - 1, y));
            double gy = 0.5 * (g(x, y + 1) - g(x, y - 1));
            fm.planes[0][size_t(y) * w + x] = std::hypot(gx, gy);
        }
    return fm;
}

}  // namespace semline
