#include "sfw/authenticator.hpp"

#include "sfw/block_io.hpp"
#include "sfw/transform.hpp"

#include <deque>
#include <map>

namespace sfw {

std::string_view to_string(BlockStatus s) noexcept
{
    switch (s) {
    case BlockStatus::Healthful: return "healthful";
    case BlockStatus::PartiallyDestroyed: return "partially_destroyed";
    case BlockStatus::FullyDestroyed: return "fully_destroyed";
    }
    return "unknown";
}

BlockStatus block_status(const StatusEvidence& e) noexcept
{
    const bool prev_ok = e.gen_a == e.ext_b1;
    const bool next_ok = e.gen_c == e.ext_b2;
    if (prev_ok || next_ok)
        return BlockStatus::Healthful;
    const bool seen_by_prev = e.gen_b == e.ext_a2;
    const bool seen_by_next = e.gen_b == e.ext_c1;
    if (!seen_by_prev && !seen_by_next)
        return BlockStatus::FullyDestroyed;
    return BlockStatus::PartiallyDestroyed;
}

SlotBits extract_block_bits(const GrayImage& img, const Config& cfg, BlockCoord block)
{
    const QimStep step = cfg.qim();
    const BlockGrid grid = BlockGrid::for_watermarking(img);
    const BlockSubbands sb = iwt_forward_block(read_block(img, block));
    const CoeffPositions pos = coeff_positions(cfg.key, grid.index(block));
    SlotBits out{};
    for (int i = 0; i < kPayloadSlots; ++i)
        out[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(qim_extract(sb.ll[pos[static_cast<std::size_t>(i)]], step));
    return out;
}

namespace {

std::uint8_t type_word_of(const SlotBits& bits)
{
    return static_cast<std::uint8_t>(read_field(bits, kTypeWordOffset, 8));
}

} // namespace

TypeVote vote_types(std::span<const SlotBits> extracted, const ChainMap& chains)
{
    const std::size_t n = extracted.size();
    TypeVote vote;
    vote.types.assign(n, BlockType::Smooth);
    vote.support.assign(n, 0);
    vote.low_confidence.assign(n, false);

    for (const auto& chain : chains.chains) {
        std::array<std::uint8_t, 4> words{};
        std::map<std::uint8_t, int> counts;
        for (int s = 0; s < 4; ++s) {
            words[s] = type_word_of(extracted[static_cast<std::size_t>(chain[s])]);
            if (type_word_valid(words[s]))
                ++counts[words[s]];
        }

        int best_count = 0;
        int holders = 0;
        std::uint8_t best_word = 0;
        for (const auto& [word, count] : counts) {
            if (count > best_count) {
                best_count = count;
                best_word = word;
                holders = 1;
            } else if (count == best_count) {
                ++holders;
            }
        }

        if (best_count > 0 && holders == 1) {
            for (int s = 0; s < 4; ++s) {
                const auto b = static_cast<std::size_t>(chain[s]);
                vote.types[b] = type_from_word(best_word, s);
                vote.support[b] = best_count;
            }
            continue;
        }

        // Fallback: vote each member's 2-bit code separately across all four
        // words, ignoring 00 codes; a tie or no vote at all yields Smooth.
        for (int s = 0; s < 4; ++s) {
            std::array<int, 4> code_votes{};
            for (auto w : words)
                ++code_votes[(w >> (2 * (3 - s))) & 0b11];
            int top = 0;
            int top_code = 0;
            bool tie = false;
            for (int code = 1; code <= 3; ++code) {
                if (code_votes[code] > top) {
                    top = code_votes[code];
                    top_code = code;
                    tie = false;
                } else if (code_votes[code] == top && top > 0) {
                    tie = true;
                }
            }
            const auto b = static_cast<std::size_t>(chain[s]);
            vote.types[b] = (top == 0 || tie) ? BlockType::Smooth : static_cast<BlockType>(top_code);
            vote.support[b] = best_count;
            vote.low_confidence[b] = true;
        }
    }
    return vote;
}

BlockMask postprocess(std::span<const BlockStatus> status, const BlockGrid& grid)
{
    const int w = grid.blocks_w, h = grid.blocks_h;
    BlockMask destroyed(w, h);
    std::deque<BlockCoord> frontier;
    for (int by = 0; by < h; ++by) {
        for (int bx = 0; bx < w; ++bx) {
            if (status[static_cast<std::size_t>(grid.index({bx, by}))] == BlockStatus::FullyDestroyed) {
                destroyed.set(bx, by, true);
                frontier.push_back({bx, by});
            }
        }
    }

    // Partially destroyed blocks reachable from a fully destroyed one.
    while (!frontier.empty()) {
        const BlockCoord c = frontier.front();
        frontier.pop_front();
        for (int dy = -1; dy <= 1; ++dy) {
            for (int dx = -1; dx <= 1; ++dx) {
                const int x = c.bx + dx, y = c.by + dy;
                if (x < 0 || y < 0 || x >= w || y >= h || destroyed.at(x, y))
                    continue;
                if (status[static_cast<std::size_t>(grid.index({x, y}))] == BlockStatus::PartiallyDestroyed) {
                    destroyed.set(x, y, true);
                    frontier.push_back({x, y});
                }
            }
        }
    }

    // Hole and contour filling, evaluated once against the mask above.
    BlockMask filled = destroyed;
    for (int by = 0; by < h; ++by) {
        for (int bx = 0; bx < w; ++bx) {
            if (destroyed.at(bx, by))
                continue;
            int around = 0;
            for (int dy = -1; dy <= 1; ++dy)
                for (int dx = -1; dx <= 1; ++dx) {
                    const int x = bx + dx, y = by + dy;
                    if ((dx || dy) && x >= 0 && y >= 0 && x < w && y < h && destroyed.at(x, y))
                        ++around;
                }
            if (around > 2)
                filled.set(bx, by, true);
        }
    }
    return filled;
}

Detection detect(const GrayImage& img, const Config& cfg)
{
    cfg.validate();
    Detection d;
    d.grid = BlockGrid::for_watermarking(img);
    const auto n = static_cast<std::size_t>(d.grid.count());

    d.extracted.reserve(n);
    d.gen.reserve(n);
    for (int b = 0; b < d.grid.count(); ++b) {
        d.extracted.push_back(extract_block_bits(img, cfg, d.grid.coord(b)));
        d.gen.push_back(msb5_encode(block_average(img, d.grid.coord(b))));
    }

    const ChainMap chains = build_chains(cfg.key, d.grid);
    d.votes = vote_types(d.extracted, chains);
    d.topology = build_topology(cfg.key, d.grid, d.votes.types);

    auto field = [&](std::size_t b, int offset) {
        return static_cast<std::uint8_t>(read_field(d.extracted[b], offset, 5));
    };
    d.evidence.resize(n);
    d.status.resize(n);
    for (std::size_t b = 0; b < n; ++b) {
        const auto a = static_cast<std::size_t>(chains.prev[b]);
        const auto c = static_cast<std::size_t>(chains.next[b]);
        StatusEvidence& e = d.evidence[b];
        e.gen_a = d.gen[a];
        e.gen_b = d.gen[b];
        e.gen_c = d.gen[c];
        e.ext_b1 = field(b, kDepPrevOffset);
        e.ext_b2 = field(b, kDepNextOffset);
        e.ext_a2 = field(a, kDepNextOffset);
        e.ext_c1 = field(c, kDepPrevOffset);
        d.status[b] = block_status(e);
    }
    d.mask = postprocess(d.status, d.grid);
    return d;
}

GrayImage detection_mask_image(const Detection& d)
{
    GrayImage img(d.grid.blocks_w, d.grid.blocks_h);
    for (int b = 0; b < d.grid.count(); ++b) {
        const BlockCoord c = d.grid.coord(b);
        std::uint8_t v = 0;
        if (d.mask.at(c.bx, c.by))
            v = 255;
        else if (d.status[static_cast<std::size_t>(b)] == BlockStatus::PartiallyDestroyed)
            v = 128;
        img.at(c.bx, c.by) = v;
    }
    return img;
}

} // namespace sfw
