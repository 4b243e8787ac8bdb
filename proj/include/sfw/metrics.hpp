#pragma once

#include "sfw/image.hpp"

#include <limits>

namespace sfw {

/// Peak term used in PSNR.
enum class PsnrPeak {
    Fixed255,     ///< 255^2, the 8-bit peak
    ReferenceMax, ///< max squared sample of the reference image
};

inline constexpr double kIdenticalDb = std::numeric_limits<double>::infinity();

/// 10*log10(peak / MSE). Returns +infinity (kIdenticalDb) when MSE is zero.
double psnr(const GrayImage& reference, const GrayImage& test, PsnrPeak peak = PsnrPeak::ReferenceMax);

/// PSNR restricted to the pixels of the blocks flagged in `region`. The peak
/// still comes from the whole reference image.
double region_psnr(const GrayImage& reference, const GrayImage& test, const BlockMask& region,
                   PsnrPeak peak = PsnrPeak::ReferenceMax);

/// Mean SSIM over every valid 11x11 Gaussian window (sigma 1.5), clamped to [0,1].
double ssim(const GrayImage& a, const GrayImage& b);

struct DetectionRates {
    double false_rejection = 0.0; ///< tampered blocks reported healthful / tampered blocks
    double false_acceptance = 0.0; ///< clean blocks reported tampered / clean blocks
};

DetectionRates fr_fa(const BlockMask& predicted, const BlockMask& truth);

} // namespace sfw
