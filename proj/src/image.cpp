#include "ficsthresh/image.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <stdexcept>

namespace fics {

namespace {

// Next header token, skipping whitespace and '#' comments.
std::string next_token(std::istream& in) {
    std::string tok;
    int c;
    while ((c = in.get()) != EOF) {
        if (c == '#') {
            while ((c = in.get()) != EOF && c != '\n') {
            }
            continue;
        }
        if (!std::isspace(c)) break;
    }
    if (c == EOF) return tok;
    tok.push_back(static_cast<char>(c));
    while ((c = in.peek()) != EOF && !std::isspace(c) && c != '#') {
        tok.push_back(static_cast<char>(in.get()));
    }
    return tok;
}

long parse_int(const std::string& tok, const char* what) {
    long value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
        throw std::runtime_error(std::string("malformed header: bad ") + what + " '" + tok + "'");
    }
    return value;
}

}  // namespace

void validate(const GrayImage& img) {
    if (img.width <= 0 || img.height <= 0) {
        throw std::invalid_argument("image dimensions must be positive");
    }
    if (img.pixels.size() != static_cast<std::size_t>(img.width) * static_cast<std::size_t>(img.height)) {
        throw std::invalid_argument("pixel count does not match width*height");
    }
}

GrayImage load_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");

    const std::string magic = next_token(in);
    if (magic != "P5" && magic != "P2") {
        throw std::runtime_error("malformed header: expected magic P5 or P2, got '" + magic + "'");
    }
    const long width = parse_int(next_token(in), "width");
    const long height = parse_int(next_token(in), "height");
    if (width <= 0 || height <= 0) throw std::runtime_error("malformed header: non-positive dimensions");
    if (width > 1000000 || height > 1000000 || width * height > (1L << 30)) {
        throw std::runtime_error("malformed header: dimensions too large");
    }
    const long maxval = parse_int(next_token(in), "maxval");
    if (maxval != 255) throw std::runtime_error("unsupported maxval " + std::to_string(maxval) + " (only 255)");

    GrayImage img;
    img.width = static_cast<int>(width);
    img.height = static_cast<int>(height);
    const std::size_t n = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    img.pixels.resize(n);

    if (magic == "P5") {
        // exactly one whitespace byte separates the header from the raster
        const int sep = in.get();
        if (sep == EOF || !std::isspace(sep)) throw std::runtime_error("malformed header: missing raster separator");
        in.read(reinterpret_cast<char*>(img.pixels.data()), static_cast<std::streamsize>(n));
        if (static_cast<std::size_t>(in.gcount()) != n) {
            throw std::runtime_error("truncated pixel data in '" + path + "'");
        }
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            const std::string tok = next_token(in);
            if (tok.empty()) throw std::runtime_error("truncated pixel data in '" + path + "'");
            const long v = parse_int(tok, "pixel");
            if (v < 0 || v > 255) throw std::runtime_error("pixel value out of range: " + tok);
            img.pixels[i] = static_cast<std::uint8_t>(v);
        }
    }
    return img;
}

void save_pgm(const GrayImage& img, const std::string& path) {
    validate(img);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << "P5\n" << img.width << ' ' << img.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.pixels.data()),
              static_cast<std::streamsize>(img.pixels.size()));
    out.flush();
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

Histogram compute_histogram(const GrayImage& img) {
    validate(img);
    Histogram h;
    for (const std::uint8_t v : img.pixels) ++h.counts[v];
    h.total = static_cast<std::int64_t>(img.pixels.size());
    return h;
}

}  // namespace fics
