#pragma once

#include "sfw/authenticator.hpp"
#include "sfw/config.hpp"
#include "sfw/image.hpp"
#include "sfw/texture.hpp"
#include "sfw/topology.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace sfw {

using Cells3x3 = std::array<std::uint8_t, 9>;

/// Expand 1 (Smooth), 4 (Normal) or 9 (Rough) values to the 3x3 rough layout.
/// Normal: corners keep the values, edge midpoints and centre are rounded means.
Cells3x3 reform_to_3x3(std::span<const std::uint8_t> values, BlockType type);

/// Where a cell's value came from.
enum class CellSource : std::uint8_t {
    Measured,        ///< thirds-average of received pixels
    PairDigest,      ///< recovery digest stored in the pair block
    DependentDigest, ///< whole-block digest stored in a chain neighbour
    Diffused,        ///< filled from neighbouring cells
};

/// Three cells per block along each axis. Cell (i,j) of block b is anchored at
/// block-local pixel coordinate ((2i+1)*16/6, (2j+1)*16/6).
struct ValueGrid {
    int cells_w = 0;
    int cells_h = 0;
    std::vector<std::uint8_t> value;
    std::vector<bool> missing;
    std::vector<CellSource> source;

    ValueGrid() = default;
    ValueGrid(int w, int h)
        : cells_w(w), cells_h(h), value(static_cast<std::size_t>(w) * h, 0),
          missing(static_cast<std::size_t>(w) * h, true),
          source(static_cast<std::size_t>(w) * h, CellSource::Diffused)
    { }

    std::size_t index(int cx, int cy) const noexcept { return static_cast<std::size_t>(cy) * cells_w + cx; }
    std::size_t missing_count() const noexcept;
};

/// Assemble the cell grid. Blocks flagged in `rebuild` take digest values;
/// every other block contributes measured thirds-averages. Digests are read
/// only from blocks flagged in `trusted`.
ValueGrid recovery_grid(const GrayImage& img, const BlockMask& rebuild, const BlockMask& trusted,
                        std::span<const BlockType> types, const Topology& topo,
                        std::span<const SlotBits> extracted);

/// Same, with trusted = complement of `tampered`.
ValueGrid recovery_grid(const GrayImage& img, const BlockMask& tampered, std::span<const BlockType> types,
                        const Topology& topo, std::span<const SlotBits> extracted);

/// Fill missing cells by repeated 4-neighbour averaging. Returns the number of
/// rounds. Throws if every cell is missing.
int fill_gaps(ValueGrid& grid);

/// Separable Catmull-Rom (a = -1/2) resampling of the cell grid to an image,
/// clamp-to-edge at the borders.
GrayImage bicubic_reconstruct(const ValueGrid& grid, int width, int height);

/// Copy pixels of flagged blocks from `estimate`; everything else from `img`.
GrayImage recover(const GrayImage& img, const BlockMask& mask, const GrayImage& estimate);

struct RecoveryResult {
    Detection detection;
    BlockMask mask; ///< blocks that were replaced
    ValueGrid grid;
    GrayImage estimate;
    GrayImage recovered;
};

/// Detection followed by recovery. `mask_override` replaces the detected mask.
RecoveryResult recover_image(const GrayImage& img, const Config& cfg,
                             const std::optional<BlockMask>& mask_override = std::nullopt);

} // namespace sfw
