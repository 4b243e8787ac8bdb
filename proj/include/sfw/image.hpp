#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <vector>

namespace sfw {

/// Raised for malformed or unsupported image files.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// 8-bit single-channel raster, row-major.
class GrayImage {
public:
    GrayImage() = default;
    GrayImage(int width, int height, std::uint8_t fill = 0);
    GrayImage(int width, int height, std::vector<std::uint8_t> data);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    bool empty() const noexcept { return data_.empty(); }

    std::uint8_t at(int x, int y) const { return data_[index(x, y)]; }
    std::uint8_t& at(int x, int y) { return data_[index(x, y)]; }

    std::span<const std::uint8_t> pixels() const noexcept { return data_; }
    std::span<std::uint8_t> pixels() noexcept { return data_; }

    bool same_size(const GrayImage& other) const noexcept
    {
        return width_ == other.width_ && height_ == other.height_;
    }

    friend bool operator==(const GrayImage&, const GrayImage&) = default;

private:
    std::size_t index(int x, int y) const noexcept
    {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> data_;
};

/// One flag per 16x16 block, row-major over the block grid.
struct BlockMask {
    int blocks_w = 0;
    int blocks_h = 0;
    std::vector<bool> flags;

    BlockMask() = default;
    BlockMask(int bw, int bh, bool value = false)
        : blocks_w(bw), blocks_h(bh), flags(static_cast<std::size_t>(bw) * bh, value)
    { }

    std::size_t size() const noexcept { return flags.size(); }
    bool at(int bx, int by) const { return flags[static_cast<std::size_t>(by) * blocks_w + bx]; }
    void set(int bx, int by, bool v) { flags[static_cast<std::size_t>(by) * blocks_w + bx] = v; }
    std::size_t count() const noexcept;

    friend bool operator==(const BlockMask&, const BlockMask&) = default;
};

// Binary PGM (P5, maxval 255). Comments are accepted on load, never written.
GrayImage load_pgm(const std::filesystem::path& path);
void save_pgm(const GrayImage& img, const std::filesystem::path& path);

GrayImage decode_pgm(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> encode_pgm(const GrayImage& img);

// Block masks are stored as PGMs with one pixel per block (0 clear, 255 set,
// anything above 128 counts as set).
// A full-resolution mask is also accepted by load_block_mask: a block is set
// when its mean value exceeds 128, so the 128 debug layer of detect masks
// reads as clear.
GrayImage mask_to_image(const BlockMask& mask);
BlockMask load_block_mask(const std::filesystem::path& path, int blocks_w, int blocks_h);

} // namespace sfw
