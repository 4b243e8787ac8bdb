#pragma once

#include "sfw/texture.hpp"
#include "sfw/topology.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace sfw {

// Fixed slot layout of the per-block payload (bit offsets).
inline constexpr int kTypeWordOffset = 0;
inline constexpr int kDepPrevOffset = 8;
inline constexpr int kDepNextOffset = 13;
inline constexpr int kRecoveryOffset = 18;

/// 18, 38 or 63 bits.
constexpr int payload_length(BlockType t) noexcept
{
    return kRecoveryOffset + 5 * (t == BlockType::Smooth ? 0 : subblock_count(t));
}

using Bits = std::vector<std::uint8_t>;        ///< one 0/1 value per element
using SlotBits = std::array<std::uint8_t, kPayloadSlots>;

/// Concatenated 2-bit codes of a chain's four members, sub-area 1 in the top bits.
std::uint8_t make_type_word(const std::array<BlockType, 4>& cycle_types) noexcept;

/// True when none of the four 2-bit codes is 00.
bool type_word_valid(std::uint8_t word) noexcept;

/// Code at position `member` (0 = sub-area 1). Requires a valid code.
BlockType type_from_word(std::uint8_t word, int member);

struct BlockPayload {
    BlockType type = BlockType::Smooth;
    std::uint8_t type_word = 0;
    std::uint8_t dep_prev = 0; ///< 5-bit digest of the previous chain member
    std::uint8_t dep_next = 0; ///< 5-bit digest of the next chain member
    std::vector<std::uint8_t> recovery; ///< 5-bit digests of the pair's sub-blocks (0/4/9)

    friend bool operator==(const BlockPayload&, const BlockPayload&) = default;
};

/// Builds the payload of a block from gray values; digests via msb5_encode.
BlockPayload make_payload(BlockType type, std::uint8_t type_word, std::uint8_t prev_avg, std::uint8_t next_avg,
                          std::span<const std::uint8_t> recovery_avgs);

/// Serialize to exactly payload_length(type) bits, MSB first within each field.
Bits assemble_payload(const BlockPayload& p);
Bits assemble_payload(BlockType type, std::uint8_t type_word, std::uint8_t prev_avg, std::uint8_t next_avg,
                      std::span<const std::uint8_t> recovery_avgs);

struct ParsedPayload {
    BlockPayload payload;
    bool type_word_valid = false;
};

/// Slice the 63 extracted slot bits by fixed offsets, reading the recovery field
/// for `assumed_type`. Bits past that type's length are ignored.
ParsedPayload parse_payload(std::span<const std::uint8_t> bits, BlockType assumed_type);

/// Read a big-endian unsigned field of `width` bits starting at `offset`.
unsigned read_field(std::span<const std::uint8_t> bits, int offset, int width);

} // namespace sfw
