#pragma once

#include "ficsthresh/image.hpp"
#include "ficsthresh/objective.hpp"

namespace fics {

struct PsnrResult {
    double mse = 0.0;
    double psnr = 0.0;  // +infinity when mse == 0
    bool infinite = false;
};

struct QualityReport {
    double mse = 0.0;
    double psnr = 0.0;
    bool psnr_infinite = false;
    double ssim = 0.0;
};

/// Reconstruction: every pixel in class [t_m, t_{m+1}) is replaced by the
/// class mean gray level, rounded to the nearest integer. Classes that hold
/// no pixels of `img` never match any pixel.
GrayImage segment_image(const GrayImage& img, const ThresholdVector& t,
                        const ObjectiveContext& ctx);

/// Peak signal-to-noise ratio, 10*log10(255^2 / MSE). Requires equal
/// dimensions; mse == 0 is reported through the infinite flag.
PsnrResult psnr(const GrayImage& x, const GrayImage& y);

/// Global-statistics SSIM with population moments over the whole image and
/// the stabilizers c1 = 6.5025, c2 = 58.5225. Requires equal dimensions and
/// at least 2 pixels.
double ssim(const GrayImage& x, const GrayImage& y);

QualityReport quality_report(const GrayImage& original, const GrayImage& reconstructed);

}  // namespace fics
