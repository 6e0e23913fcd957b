#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace fics {

/// 8-bit grayscale raster, row-major.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;

    std::size_t size() const { return pixels.size(); }
    std::uint8_t at(int x, int y) const {
        return pixels[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(x)];
    }
};

/// Throws std::invalid_argument if dimensions are non-positive or the pixel
/// count does not equal width*height.
void validate(const GrayImage& img);

/// Reads a PGM file, binary "P5" or plain "P2", maxval 255. Header comments
/// starting with '#' are skipped. Failure modes (unreadable file, malformed
/// header, unsupported maxval, truncated pixel data) throw std::runtime_error
/// with distinct messages.
GrayImage load_pgm(const std::string& path);

/// Writes a binary "P5" PGM. load_pgm(save_pgm(img)) reproduces img exactly.
void save_pgm(const GrayImage& img, const std::string& path);

/// 256-bin gray level histogram: counts[i] = number of pixels of level i.
struct Histogram {
    std::array<std::int64_t, 256> counts{};
    std::int64_t total = 0;
};

Histogram compute_histogram(const GrayImage& img);

}  // namespace fics
