#include "sfw/texture.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sfw {

BlockGrid BlockGrid::for_watermarking(int width, int height)
{
    if (width <= 0 || height <= 0 || width % 64 != 0 || height % 64 != 0)
        throw std::invalid_argument("image dimensions must be positive multiples of 64, got "
                                    + std::to_string(width) + "x" + std::to_string(height));
    return {width / kBlockSize, height / kBlockSize};
}

BlockGrid BlockGrid::for_watermarking(const GrayImage& img)
{
    return for_watermarking(img.width(), img.height());
}

std::string_view to_string(BlockType t) noexcept
{
    switch (t) {
    case BlockType::Smooth: return "smooth";
    case BlockType::Normal: return "normal";
    case BlockType::Rough: return "rough";
    }
    return "invalid";
}

std::span<const int> subblock_edges(BlockType t) noexcept
{
    static constexpr int smooth[] = {0, 16};
    static constexpr int normal[] = {0, 8, 16};
    static constexpr int rough[] = {0, 5, 10, 16};
    switch (t) {
    case BlockType::Smooth: return smooth;
    case BlockType::Normal: return normal;
    case BlockType::Rough: return rough;
    }
    return {};
}

std::vector<double> block_std(const GrayImage& img, const BlockGrid& grid)
{
    if (img.width() != grid.width_px() || img.height() != grid.height_px())
        throw std::invalid_argument("image does not match block grid");
    std::vector<double> out(static_cast<std::size_t>(grid.count()));
    for (int by = 0; by < grid.blocks_h; ++by) {
        for (int bx = 0; bx < grid.blocks_w; ++bx) {
            long sum = 0;
            long sum_sq = 0;
            for (int y = by * kBlockSize; y < (by + 1) * kBlockSize; ++y) {
                for (int x = bx * kBlockSize; x < (bx + 1) * kBlockSize; ++x) {
                    const long v = img.at(x, y);
                    sum += v;
                    sum_sq += v * v;
                }
            }
            constexpr double n = kBlockSize * kBlockSize;
            // n*sum_sq - sum^2 is exact in integers.
            const double var = static_cast<double>(256 * sum_sq - sum * sum) / (n * n);
            out[static_cast<std::size_t>(grid.index({bx, by}))] = std::sqrt(std::max(0.0, var));
        }
    }
    return out;
}

std::vector<double> normalize(std::span<const double> values)
{
    if (values.empty())
        throw std::invalid_argument("normalize of an empty list");
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    const double min = *lo;
    const double range = *hi - *lo;
    std::vector<double> out(values.size(), 0.0);
    if (range <= 0.0)
        return out;
    for (std::size_t i = 0; i < values.size(); ++i)
        out[i] = std::clamp((values[i] - min) / range, 0.0, 1.0);
    return out;
}

BlockType categorize(double norm, double th1, double th2)
{
    if (!(0.0 < th1 && th1 < th2 && th2 <= 1.0))
        throw std::invalid_argument("thresholds must satisfy 0 < th1 < th2 <= 1");
    if (norm < th1)
        return BlockType::Smooth;
    if (norm < th2)
        return BlockType::Normal;
    return BlockType::Rough;
}

TextureMap analyze_texture(const GrayImage& img, const BlockGrid& grid, double th1, double th2)
{
    TextureMap map;
    map.grid = grid;
    map.raw_std = block_std(img, grid);
    map.norm_std = normalize(map.raw_std);
    map.types.reserve(map.norm_std.size());
    for (double n : map.norm_std)
        map.types.push_back(categorize(n, th1, th2));
    return map;
}

namespace {

std::uint8_t rounded_mean(long sum, long count)
{
    // half-up: floor(sum/count + 1/2)
    return static_cast<std::uint8_t>((2 * sum + count) / (2 * count));
}

void require_block(const GrayImage& img, BlockCoord b)
{
    if (b.bx < 0 || b.by < 0 || (b.bx + 1) * kBlockSize > img.width() || (b.by + 1) * kBlockSize > img.height())
        throw std::out_of_range("block outside image");
}

} // namespace

std::uint8_t block_average(const GrayImage& img, BlockCoord block)
{
    require_block(img, block);
    long sum = 0;
    for (int y = 0; y < kBlockSize; ++y)
        for (int x = 0; x < kBlockSize; ++x)
            sum += img.at(block.bx * kBlockSize + x, block.by * kBlockSize + y);
    return rounded_mean(sum, kBlockSize * kBlockSize);
}

std::vector<std::uint8_t> subblock_averages(const GrayImage& img, BlockCoord block, BlockType type)
{
    require_block(img, block);
    const auto edges = subblock_edges(type);
    const int parts = static_cast<int>(edges.size()) - 1;
    std::vector<std::uint8_t> out;
    out.reserve(static_cast<std::size_t>(parts * parts));
    const int x0 = block.bx * kBlockSize;
    const int y0 = block.by * kBlockSize;
    for (int r = 0; r < parts; ++r) {
        for (int c = 0; c < parts; ++c) {
            long sum = 0;
            for (int y = edges[r]; y < edges[r + 1]; ++y)
                for (int x = edges[c]; x < edges[c + 1]; ++x)
                    sum += img.at(x0 + x, y0 + y);
            out.push_back(rounded_mean(sum, static_cast<long>(edges[r + 1] - edges[r]) * (edges[c + 1] - edges[c])));
        }
    }
    return out;
}

std::uint8_t msb5_encode(int avg)
{
    if (avg < 0 || avg > 255)
        throw std::out_of_range("gray value outside [0,255]");
    return static_cast<std::uint8_t>(avg >> 3);
}

std::uint8_t msb5_decode(std::uint8_t bits5)
{
    return static_cast<std::uint8_t>(((bits5 & 0x1F) << 3) | 0b100);
}

} // namespace sfw
