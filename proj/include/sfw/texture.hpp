#pragma once

#include "sfw/image.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace sfw {

inline constexpr int kBlockSize = 16;

struct BlockCoord {
    int bx = 0;
    int by = 0;
    friend bool operator==(const BlockCoord&, const BlockCoord&) = default;
};

/// Grid of 16x16 blocks covering an image.
struct BlockGrid {
    int blocks_w = 0;
    int blocks_h = 0;

    /// Requires dimensions to be multiples of 64 (blocks per side a multiple of 4).
    static BlockGrid for_watermarking(const GrayImage& img);
    static BlockGrid for_watermarking(int width, int height);

    int count() const noexcept { return blocks_w * blocks_h; }
    int index(BlockCoord c) const noexcept { return c.by * blocks_w + c.bx; }
    BlockCoord coord(int index) const noexcept { return {index % blocks_w, index / blocks_w}; }
    int width_px() const noexcept { return blocks_w * kBlockSize; }
    int height_px() const noexcept { return blocks_h * kBlockSize; }

    friend bool operator==(const BlockGrid&, const BlockGrid&) = default;
};

/// Texture class. The enumerator value is the 2-bit wire code; 00 is invalid.
enum class BlockType : std::uint8_t {
    Smooth = 0b01,
    Normal = 0b10,
    Rough = 0b11,
};

std::string_view to_string(BlockType t) noexcept;

/// Number of sub-block averages carried for recovery: 1, 4 or 9.
constexpr int subblock_count(BlockType t) noexcept
{
    switch (t) {
    case BlockType::Smooth: return 1;
    case BlockType::Normal: return 4;
    case BlockType::Rough: return 9;
    }
    return 0;
}

/// Sub-block boundaries along one axis of a 16-pixel block, including 0 and 16.
std::span<const int> subblock_edges(BlockType t) noexcept;

struct TextureMap {
    BlockGrid grid;
    std::vector<double> raw_std;
    std::vector<double> norm_std;
    std::vector<BlockType> types;
};

/// Population standard deviation of every block, row-major over the grid.
std::vector<double> block_std(const GrayImage& img, const BlockGrid& grid);

/// Min-max normalization into [0,1]; all-equal input maps to all zeros.
std::vector<double> normalize(std::span<const double> values);

/// [0,th1) Smooth, [th1,th2) Normal, [th2,1] Rough.
BlockType categorize(double norm, double th1, double th2);

TextureMap analyze_texture(const GrayImage& img, const BlockGrid& grid, double th1, double th2);

/// Rounded (half-up) mean of the 256 block pixels.
std::uint8_t block_average(const GrayImage& img, BlockCoord block);

/// Rounded means of the 1/4/9 sub-blocks of `block`, row-major.
std::vector<std::uint8_t> subblock_averages(const GrayImage& img, BlockCoord block, BlockType type);

/// Top five bits of an 8-bit gray value, as an integer in [0,31].
std::uint8_t msb5_encode(int avg);

/// Five bits with 100b appended: value*8 + 4.
std::uint8_t msb5_decode(std::uint8_t bits5);

} // namespace sfw
