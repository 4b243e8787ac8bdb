#include "sfw/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace sfw {

namespace {

void require_same_size(const GrayImage& a, const GrayImage& b)
{
    if (!a.same_size(b))
        throw std::invalid_argument("image dimensions differ");
}

double psnr_from_sums(double squared_error, std::size_t count, int max_sample, PsnrPeak peak)
{
    if (squared_error == 0.0)
        return kIdenticalDb;
    const double p = peak == PsnrPeak::Fixed255 ? 255.0 : static_cast<double>(max_sample);
    const double mse = squared_error / static_cast<double>(count);
    return 10.0 * std::log10(p * p / mse);
}

} // namespace

double psnr(const GrayImage& reference, const GrayImage& test, PsnrPeak peak)
{
    require_same_size(reference, test);
    if (reference.empty())
        throw std::invalid_argument("psnr of empty images");
    const auto a = reference.pixels();
    const auto b = test.pixels();
    double se = 0.0;
    int max_sample = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = static_cast<double>(a[i]) - static_cast<double>(b[i]);
        se += d * d;
        max_sample = std::max<int>(max_sample, a[i]);
    }
    return psnr_from_sums(se, a.size(), max_sample, peak);
}

double region_psnr(const GrayImage& reference, const GrayImage& test, const BlockMask& region, PsnrPeak peak)
{
    require_same_size(reference, test);
    if (region.blocks_w * 16 > reference.width() || region.blocks_h * 16 > reference.height())
        throw std::invalid_argument("region mask exceeds image");
    if (region.count() == 0)
        throw std::invalid_argument("region mask selects no blocks");

    double se = 0.0;
    std::size_t n = 0;
    const auto ref = reference.pixels();
    const int max_sample = ref.empty() ? 0 : *std::max_element(ref.begin(), ref.end());
    for (int by = 0; by < region.blocks_h; ++by) {
        for (int bx = 0; bx < region.blocks_w; ++bx) {
            if (!region.at(bx, by))
                continue;
            for (int y = by * 16; y < by * 16 + 16; ++y) {
                for (int x = bx * 16; x < bx * 16 + 16; ++x) {
                    const double d = static_cast<double>(reference.at(x, y)) - test.at(x, y);
                    se += d * d;
                    ++n;
                }
            }
        }
    }
    return psnr_from_sums(se, n, max_sample, peak);
}

namespace {

constexpr int kWin = 11;
constexpr double kSigma = 1.5;

std::array<double, kWin> gaussian_window()
{
    std::array<double, kWin> w{};
    double sum = 0.0;
    for (int i = 0; i < kWin; ++i) {
        const double t = i - kWin / 2;
        w[i] = std::exp(-(t * t) / (2.0 * kSigma * kSigma));
        sum += w[i];
    }
    for (auto& v : w)
        v /= sum;
    return w;
}

// Separable "valid" filtering: output is (w-10) x (h-10).
std::vector<double> filter_valid(const std::vector<double>& src, int w, int h, const std::array<double, kWin>& k)
{
    const int ow = w - kWin + 1;
    const int oh = h - kWin + 1;
    std::vector<double> tmp(static_cast<std::size_t>(ow) * h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < ow; ++x) {
            double acc = 0.0;
            for (int i = 0; i < kWin; ++i)
                acc += k[i] * src[static_cast<std::size_t>(y) * w + x + i];
            tmp[static_cast<std::size_t>(y) * ow + x] = acc;
        }
    }
    std::vector<double> out(static_cast<std::size_t>(ow) * oh);
    for (int y = 0; y < oh; ++y) {
        for (int x = 0; x < ow; ++x) {
            double acc = 0.0;
            for (int i = 0; i < kWin; ++i)
                acc += k[i] * tmp[static_cast<std::size_t>(y + i) * ow + x];
            out[static_cast<std::size_t>(y) * ow + x] = acc;
        }
    }
    return out;
}

} // namespace

double ssim(const GrayImage& a, const GrayImage& b)
{
    require_same_size(a, b);
    if (a.width() < kWin || a.height() < kWin)
        throw std::invalid_argument("ssim needs images of at least 11x11");

    const int w = a.width();
    const int h = a.height();
    const std::size_t n = static_cast<std::size_t>(w) * h;
    std::vector<double> x(n), y(n), xx(n), yy(n), xy(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = a.pixels()[i];
        y[i] = b.pixels()[i];
        xx[i] = x[i] * x[i];
        yy[i] = y[i] * y[i];
        xy[i] = x[i] * y[i];
    }
    const auto k = gaussian_window();
    const auto mx = filter_valid(x, w, h, k);
    const auto my = filter_valid(y, w, h, k);
    const auto mxx = filter_valid(xx, w, h, k);
    const auto myy = filter_valid(yy, w, h, k);
    const auto mxy = filter_valid(xy, w, h, k);

    constexpr double c1 = (0.01 * 255.0) * (0.01 * 255.0);
    constexpr double c2 = (0.03 * 255.0) * (0.03 * 255.0);
    double total = 0.0;
    for (std::size_t i = 0; i < mx.size(); ++i) {
        const double vx = mxx[i] - mx[i] * mx[i];
        const double vy = myy[i] - my[i] * my[i];
        const double cov = mxy[i] - mx[i] * my[i];
        total += ((2.0 * mx[i] * my[i] + c1) * (2.0 * cov + c2))
            / ((mx[i] * mx[i] + my[i] * my[i] + c1) * (vx + vy + c2));
    }
    return std::clamp(total / static_cast<double>(mx.size()), 0.0, 1.0);
}

DetectionRates fr_fa(const BlockMask& predicted, const BlockMask& truth)
{
    if (predicted.blocks_w != truth.blocks_w || predicted.blocks_h != truth.blocks_h)
        throw std::invalid_argument("mask grids differ");
    std::size_t tampered = 0, missed = 0, clean = 0, false_alarms = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        if (truth.flags[i]) {
            ++tampered;
            missed += predicted.flags[i] ? 0 : 1;
        } else {
            ++clean;
            false_alarms += predicted.flags[i] ? 1 : 0;
        }
    }
    if (tampered == 0 || clean == 0)
        throw std::invalid_argument("ground truth must contain both tampered and clean blocks");
    return {static_cast<double>(missed) / static_cast<double>(tampered),
            static_cast<double>(false_alarms) / static_cast<double>(clean)};
}

} // namespace sfw
