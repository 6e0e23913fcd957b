#include "ficsthresh/segmetrics.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fics {

namespace {

constexpr double kC1 = 6.5025;
constexpr double kC2 = 58.5225;

void require_same_shape(const GrayImage& x, const GrayImage& y) {
    if (x.width != y.width || x.height != y.height) {
        throw std::invalid_argument("image dimensions differ");
    }
}

}  // namespace

GrayImage segment_image(const GrayImage& img, const ThresholdVector& t,
                        const ObjectiveContext& ctx) {
    validate(img);
    // per-level replacement table: class mean, rounded to nearest integer
    std::array<std::uint8_t, kGrayLevels> lut{};
    int lower = 0;
    const int m = static_cast<int>(t.size());
    for (int k = 0; k <= m; ++k) {
        const int upper = (k < m) ? t[static_cast<std::size_t>(k)] : kGrayLevels;
        const double omega = ctx.cum_count[upper] - ctx.cum_count[lower];
        double mean;
        if (omega > 0.0) {
            mean = (ctx.cum_moment[upper] - ctx.cum_moment[lower]) / omega;
        } else {
            // class holds no pixels of img; value is never looked up when ctx
            // matches img, midpoint keeps the table total anyway
            mean = (lower + upper - 1) / 2.0;
        }
        const int level = static_cast<int>(std::lround(mean));
        for (int i = lower; i < upper; ++i) lut[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(level);
        lower = upper;
    }
    GrayImage out;
    out.width = img.width;
    out.height = img.height;
    out.pixels.resize(img.pixels.size());
    for (std::size_t i = 0; i < img.pixels.size(); ++i) out.pixels[i] = lut[img.pixels[i]];
    return out;
}

PsnrResult psnr(const GrayImage& x, const GrayImage& y) {
    require_same_shape(x, y);
    validate(x);
    double sq = 0.0;
    for (std::size_t i = 0; i < x.pixels.size(); ++i) {
        const double d = static_cast<double>(x.pixels[i]) - static_cast<double>(y.pixels[i]);
        sq += d * d;
    }
    PsnrResult r;
    r.mse = sq / static_cast<double>(x.pixels.size());
    if (r.mse == 0.0) {
        r.infinite = true;
        r.psnr = std::numeric_limits<double>::infinity();
    } else {
        r.psnr = 10.0 * std::log10(255.0 * 255.0 / r.mse);
    }
    return r;
}

double ssim(const GrayImage& x, const GrayImage& y) {
    require_same_shape(x, y);
    validate(x);
    const std::size_t n = x.pixels.size();
    if (n < 2) throw std::invalid_argument("ssim needs at least 2 pixels");
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x.pixels[i];
        sy += y.pixels[i];
    }
    const double mu_x = sx / static_cast<double>(n);
    const double mu_y = sy / static_cast<double>(n);
    // population moments (divisor n)
    double var_x = 0.0, var_y = 0.0, cov = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = static_cast<double>(x.pixels[i]) - mu_x;
        const double dy = static_cast<double>(y.pixels[i]) - mu_y;
        var_x += dx * dx;
        var_y += dy * dy;
        cov += dx * dy;
    }
    var_x /= static_cast<double>(n);
    var_y /= static_cast<double>(n);
    cov /= static_cast<double>(n);
    return ((2.0 * mu_x * mu_y + kC1) * (2.0 * cov + kC2)) /
           ((mu_x * mu_x + mu_y * mu_y + kC1) * (var_x + var_y + kC2));
}

QualityReport quality_report(const GrayImage& original, const GrayImage& reconstructed) {
    const PsnrResult p = psnr(original, reconstructed);
    QualityReport q;
    q.mse = p.mse;
    q.psnr = p.psnr;
    q.psnr_infinite = p.infinite;
    q.ssim = ssim(original, reconstructed);
    return q;
}

}  // namespace fics
