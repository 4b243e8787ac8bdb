#include "sfw/payload.hpp"

#include <stdexcept>

namespace sfw {

std::uint8_t make_type_word(const std::array<BlockType, 4>& cycle_types) noexcept
{
    unsigned word = 0;
    for (BlockType t : cycle_types)
        word = (word << 2) | static_cast<unsigned>(t);
    return static_cast<std::uint8_t>(word);
}

bool type_word_valid(std::uint8_t word) noexcept
{
    for (int i = 0; i < 4; ++i)
        if (((word >> (2 * i)) & 0b11) == 0)
            return false;
    return true;
}

BlockType type_from_word(std::uint8_t word, int member)
{
    const unsigned code = (word >> (2 * (3 - member))) & 0b11;
    if (code == 0)
        throw std::invalid_argument("type code 00 is invalid");
    return static_cast<BlockType>(code);
}

BlockPayload make_payload(BlockType type, std::uint8_t type_word, std::uint8_t prev_avg, std::uint8_t next_avg,
                          std::span<const std::uint8_t> recovery_avgs)
{
    const std::size_t expected = type == BlockType::Smooth ? 0 : static_cast<std::size_t>(subblock_count(type));
    if (recovery_avgs.size() != expected)
        throw std::invalid_argument("recovery value count does not match block type");
    BlockPayload p;
    p.type = type;
    p.type_word = type_word;
    p.dep_prev = msb5_encode(prev_avg);
    p.dep_next = msb5_encode(next_avg);
    for (auto v : recovery_avgs)
        p.recovery.push_back(msb5_encode(v));
    return p;
}

namespace {

void write_field(Bits& out, unsigned value, int width)
{
    for (int i = width - 1; i >= 0; --i)
        out.push_back(static_cast<std::uint8_t>((value >> i) & 1U));
}

} // namespace

Bits assemble_payload(const BlockPayload& p)
{
    const std::size_t expected = p.type == BlockType::Smooth ? 0 : static_cast<std::size_t>(subblock_count(p.type));
    if (p.recovery.size() != expected)
        throw std::invalid_argument("recovery digest count does not match block type");
    Bits out;
    out.reserve(static_cast<std::size_t>(payload_length(p.type)));
    write_field(out, p.type_word, 8);
    write_field(out, p.dep_prev, 5);
    write_field(out, p.dep_next, 5);
    for (auto d : p.recovery)
        write_field(out, d, 5);
    return out;
}

Bits assemble_payload(BlockType type, std::uint8_t type_word, std::uint8_t prev_avg, std::uint8_t next_avg,
                      std::span<const std::uint8_t> recovery_avgs)
{
    return assemble_payload(make_payload(type, type_word, prev_avg, next_avg, recovery_avgs));
}

unsigned read_field(std::span<const std::uint8_t> bits, int offset, int width)
{
    if (offset < 0 || static_cast<std::size_t>(offset + width) > bits.size())
        throw std::out_of_range("payload field outside bit vector");
    unsigned v = 0;
    for (int i = 0; i < width; ++i)
        v = (v << 1) | (bits[static_cast<std::size_t>(offset + i)] & 1U);
    return v;
}

ParsedPayload parse_payload(std::span<const std::uint8_t> bits, BlockType assumed_type)
{
    if (bits.size() < static_cast<std::size_t>(payload_length(assumed_type)))
        throw std::invalid_argument("too few bits for the assumed block type");
    ParsedPayload out;
    BlockPayload& p = out.payload;
    p.type = assumed_type;
    p.type_word = static_cast<std::uint8_t>(read_field(bits, kTypeWordOffset, 8));
    p.dep_prev = static_cast<std::uint8_t>(read_field(bits, kDepPrevOffset, 5));
    p.dep_next = static_cast<std::uint8_t>(read_field(bits, kDepNextOffset, 5));
    if (assumed_type != BlockType::Smooth) {
        for (int i = 0; i < subblock_count(assumed_type); ++i)
            p.recovery.push_back(static_cast<std::uint8_t>(read_field(bits, kRecoveryOffset + 5 * i, 5)));
    }
    out.type_word_valid = type_word_valid(p.type_word);
    return out;
}

} // namespace sfw
