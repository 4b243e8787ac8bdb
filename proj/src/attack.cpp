#include "sfw/attack.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace sfw {

namespace {

void require_inside(const GrayImage& img, Rect r, const char* what)
{
    if (r.w < 0 || r.h < 0 || r.x < 0 || r.y < 0 || r.x + r.w > img.width() || r.y + r.h > img.height())
        throw std::out_of_range(std::string(what) + " rectangle outside the image");
}

struct DctBasis {
    // c[u][x] = alpha(u) * cos((2x+1) u pi / 16), orthonormal.
    double c[8][8];
    DctBasis()
    {
        for (int u = 0; u < 8; ++u) {
            const double alpha = u == 0 ? std::sqrt(1.0 / 8.0) : std::sqrt(2.0 / 8.0);
            for (int x = 0; x < 8; ++x)
                c[u][x] = alpha * std::cos((2 * x + 1) * u * std::numbers::pi / 16.0);
        }
    }
};

const DctBasis& basis()
{
    static const DctBasis b;
    return b;
}

} // namespace

std::array<int, 64> jpeg_quant_table(int qf)
{
    if (qf < 1 || qf > 100)
        throw std::invalid_argument("JPEG quality factor must be in [1,100]");
    const int scale = qf < 50 ? 5000 / qf : 200 - 2 * qf;
    std::array<int, 64> q{};
    for (std::size_t i = 0; i < q.size(); ++i)
        q[i] = std::clamp((kJpegLuminanceTable[i] * scale + 50) / 100, 1, 255);
    return q;
}

GrayImage jpeg_attack(const GrayImage& img, int qf)
{
    const auto q = jpeg_quant_table(qf);
    if (img.width() % 8 != 0 || img.height() % 8 != 0)
        throw std::invalid_argument("JPEG simulation needs dimensions that are multiples of 8");
    const auto& c = basis().c;
    GrayImage out(img.width(), img.height());

    for (int by = 0; by < img.height(); by += 8) {
        for (int bx = 0; bx < img.width(); bx += 8) {
            double px[8][8], tmp[8][8], coef[8][8];
            for (int y = 0; y < 8; ++y)
                for (int x = 0; x < 8; ++x)
                    px[y][x] = static_cast<double>(img.at(bx + x, by + y)) - 128.0;

            for (int y = 0; y < 8; ++y)
                for (int u = 0; u < 8; ++u) {
                    double acc = 0.0;
                    for (int x = 0; x < 8; ++x)
                        acc += c[u][x] * px[y][x];
                    tmp[y][u] = acc;
                }
            for (int v = 0; v < 8; ++v)
                for (int u = 0; u < 8; ++u) {
                    double acc = 0.0;
                    for (int y = 0; y < 8; ++y)
                        acc += c[v][y] * tmp[y][u];
                    const int step = q[static_cast<std::size_t>(v * 8 + u)];
                    coef[v][u] = std::round(acc / step) * step;
                }

            for (int v = 0; v < 8; ++v)
                for (int x = 0; x < 8; ++x) {
                    double acc = 0.0;
                    for (int u = 0; u < 8; ++u)
                        acc += c[u][x] * coef[v][u];
                    tmp[v][x] = acc;
                }
            for (int y = 0; y < 8; ++y)
                for (int x = 0; x < 8; ++x) {
                    double acc = 0.0;
                    for (int v = 0; v < 8; ++v)
                        acc += c[v][y] * tmp[v][x];
                    out.at(bx + x, by + y) = static_cast<std::uint8_t>(std::clamp(std::round(acc + 128.0), 0.0, 255.0));
                }
        }
    }
    return out;
}

GrayImage copy_move(const GrayImage& img, Rect src, Rect dst)
{
    if (src.w != dst.w || src.h != dst.h)
        throw std::invalid_argument("copy-move source and destination sizes differ");
    require_inside(img, src, "source");
    require_inside(img, dst, "destination");
    GrayImage out = img; // reads come from `img`, so overlap is harmless
    for (int y = 0; y < src.h; ++y)
        for (int x = 0; x < src.w; ++x)
            out.at(dst.x + x, dst.y + y) = img.at(src.x + x, src.y + y);
    return out;
}

GrayImage erase(const GrayImage& img, Rect rect, std::uint8_t value)
{
    require_inside(img, rect, "erase");
    GrayImage out = img;
    for (int y = rect.y; y < rect.y + rect.h; ++y)
        for (int x = rect.x; x < rect.x + rect.w; ++x)
            out.at(x, y) = value;
    return out;
}

BlockMask tamper_truth(int width, int height, Rect rect)
{
    const int bw = width / 16, bh = height / 16;
    BlockMask mask(bw, bh);
    if (rect.w <= 0 || rect.h <= 0)
        return mask;
    const int x0 = std::max(0, rect.x / 16), y0 = std::max(0, rect.y / 16);
    const int x1 = std::min(bw - 1, (rect.x + rect.w - 1) / 16);
    const int y1 = std::min(bh - 1, (rect.y + rect.h - 1) / 16);
    for (int by = y0; by <= y1; ++by)
        for (int bx = x0; bx <= x1; ++bx)
            mask.set(bx, by, true);
    return mask;
}

} // namespace sfw
