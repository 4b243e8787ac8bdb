#pragma once

#include "sfw/config.hpp"
#include "sfw/image.hpp"
#include "sfw/payload.hpp"
#include "sfw/texture.hpp"
#include "sfw/topology.hpp"

#include <span>
#include <string_view>
#include <vector>

namespace sfw {

enum class BlockStatus : std::uint8_t {
    Healthful,
    PartiallyDestroyed,
    FullyDestroyed,
};

std::string_view to_string(BlockStatus s) noexcept;

/// Digest comparisons for block B with chain predecessor A and successor C.
/// gen_*: 5-MSB of the received block averages. ext_b1/ext_b2: B's stored copies
/// of A's and C's digests. ext_a2: A's copy of B's digest. ext_c1: C's copy.
struct StatusEvidence {
    std::uint8_t gen_a = 0;
    std::uint8_t gen_b = 0;
    std::uint8_t gen_c = 0;
    std::uint8_t ext_b1 = 0;
    std::uint8_t ext_b2 = 0;
    std::uint8_t ext_a2 = 0;
    std::uint8_t ext_c1 = 0;
};

/// Healthful, then FullyDestroyed, then PartiallyDestroyed; anything left over
/// is PartiallyDestroyed.
BlockStatus block_status(const StatusEvidence& e) noexcept;

/// Forward IWT of the block and QIM extraction at its 63 keyed positions.
SlotBits extract_block_bits(const GrayImage& img, const Config& cfg, BlockCoord block);

struct TypeVote {
    std::vector<BlockType> types;
    /// Number of valid type words (0..4) agreeing with the chosen word.
    std::vector<int> support;
    /// Set when no unique majority word existed and the per-code fallback ran.
    std::vector<bool> low_confidence;
};

/// Majority vote over the four type-word copies of each chain.
TypeVote vote_types(std::span<const SlotBits> extracted, const ChainMap& chains);

/// Promote partially destroyed blocks 8-connected (directly or through other
/// partially destroyed blocks) to a fully destroyed one, drop the rest, then
/// flag every healthful block with more than two destroyed 8-neighbours.
BlockMask postprocess(std::span<const BlockStatus> status, const BlockGrid& grid);

struct Detection {
    BlockGrid grid;
    Topology topology; ///< rebuilt from the voted types
    std::vector<SlotBits> extracted;
    TypeVote votes;
    std::vector<std::uint8_t> gen; ///< received 5-MSB digests
    std::vector<StatusEvidence> evidence;
    std::vector<BlockStatus> status;
    BlockMask mask; ///< final tamper mask
};

Detection detect(const GrayImage& img, const Config& cfg);

/// 0 = healthful, 128 = partially destroyed but cleared by post-processing,
/// 255 = tampered. One pixel per block.
GrayImage detection_mask_image(const Detection& d);

} // namespace sfw
