#pragma once

#include "sfw/config.hpp"
#include "sfw/image.hpp"
#include "sfw/payload.hpp"
#include "sfw/texture.hpp"
#include "sfw/topology.hpp"

#include <span>
#include <vector>

namespace sfw {

inline constexpr int kMaxRepairIterations = 5;
inline constexpr int kMaxDigestPasses = 8;

struct EmbedReport {
    double psnr = 0.0;
    double ssim = 0.0;
    int smooth_blocks = 0;
    int normal_blocks = 0;
    int rough_blocks = 0;
    /// Payload bits that still read back wrong after the clamp-repair loop.
    int residual_bit_errors = 0;
    /// Blocks whose digest in the watermarked image differs from the one stored
    /// in their chain neighbours.
    int digest_mismatches = 0;
    int digest_passes = 0;
    Config config;

    bool degraded() const noexcept { return residual_bit_errors != 0; }
};

struct EmbedResult {
    GrayImage image;
    EmbedReport report;
    TextureMap texture;
    Topology topology;
    /// Bits written into each block, payload_length(type) long.
    std::vector<Bits> payloads;
};

struct BlockEmbedding {
    Block16 pixels{};
    int residual_errors = 0;
};

/// QIM-embed `bits` into the LL1 coefficients at `positions`, invert, clamp to
/// [0,255] and repair bits broken by clamping.
BlockEmbedding embed_block(const Block16& original, std::span<const std::uint8_t> bits,
                           const CoeffPositions& positions, QimStep step);

/// Watermark `img`. Dimensions must be multiples of 64.
EmbedResult embed(const GrayImage& img, const Config& cfg);

/// Count payload bits of `wm` that disagree with `expected` (one entry per block).
int verify_embedding(const GrayImage& wm, const Config& cfg, std::span<const Bits> expected);

} // namespace sfw
