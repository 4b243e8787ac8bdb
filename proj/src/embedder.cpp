#include "sfw/embedder.hpp"

#include "sfw/authenticator.hpp"
#include "sfw/block_io.hpp"
#include "sfw/metrics.hpp"

#include <stdexcept>

namespace sfw {

namespace {

struct ViolatedBound {
    bool under = false;
    bool over = false;
};

// Pixels touched by LL coefficient (r,c) under 5/3 synthesis: rows/cols 2r-1..2r+1.
ViolatedBound bounds_near(const Block16& raw, int position)
{
    const int r = position / 8, c = position % 8;
    ViolatedBound v;
    for (int y = std::max(0, 2 * r - 1); y <= std::min(15, 2 * r + 1); ++y) {
        for (int x = std::max(0, 2 * c - 1); x <= std::min(15, 2 * c + 1); ++x) {
            const int p = raw[y * 16 + x];
            v.under |= p < 0;
            v.over |= p > 255;
        }
    }
    return v;
}

Block16 clamped(const Block16& raw)
{
    Block16 out{};
    for (std::size_t i = 0; i < raw.size(); ++i)
        out[i] = std::clamp(raw[i], 0, 255);
    return out;
}

} // namespace

BlockEmbedding embed_block(const Block16& original, std::span<const std::uint8_t> bits,
                           const CoeffPositions& positions, QimStep step)
{
    if (bits.size() > positions.size())
        throw std::invalid_argument("payload longer than the available slots");
    const int s = step.value();

    BlockSubbands target = iwt_forward_block(original);
    for (std::size_t i = 0; i < bits.size(); ++i) {
        int& c = target.ll[positions[i]];
        c = qim_embed(c, bits[i], step);
    }

    BlockEmbedding result;
    for (int iter = 0;; ++iter) {
        const Block16 raw = iwt_inverse_block(target);
        result.pixels = clamped(raw);
        BlockSubbands seen = iwt_forward_block(result.pixels);

        int failures = 0;
        for (std::size_t i = 0; i < bits.size(); ++i)
            failures += qim_extract(seen.ll[positions[i]], step) != bits[i] ? 1 : 0;
        result.residual_errors = failures;
        if (failures == 0 || iter == kMaxRepairIterations)
            return result;

        // Start again from the clamped block (already in range) and move every
        // broken coefficient to a lattice point on the side away from the bound
        // that clamping hit.
        for (std::size_t i = 0; i < bits.size(); ++i) {
            int& c = seen.ll[positions[i]];
            if (qim_extract(c, step) == bits[i])
                continue;
            const ViolatedBound v = bounds_near(raw, positions[i]);
            int candidate = qim_embed(c, bits[i], step);
            if (v.under && !v.over && candidate <= c)
                candidate += 2 * s;
            else if (v.over && !v.under && candidate >= c)
                candidate -= 2 * s;
            c = candidate;
        }
        target = seen;
    }
}

EmbedResult embed(const GrayImage& img, const Config& cfg)
{
    cfg.validate();
    const BlockGrid grid = BlockGrid::for_watermarking(img);
    const QimStep step = cfg.qim();

    EmbedResult out;
    out.texture = analyze_texture(img, grid, cfg.th1, cfg.th2);
    out.topology = build_topology(cfg.key, grid, out.texture.types);
    const Topology& topo = out.topology;
    const auto n = static_cast<std::size_t>(grid.count());

    std::vector<std::uint8_t> type_word(n);
    for (const auto& chain : topo.chains.chains) {
        std::array<BlockType, 4> cycle{};
        for (int s = 0; s < 4; ++s)
            cycle[s] = out.texture.types[static_cast<std::size_t>(chain[s])];
        const auto word = make_type_word(cycle);
        for (int b : chain)
            type_word[static_cast<std::size_t>(b)] = word;
    }

    // Recovery digests describe the pair block of the original image.
    std::vector<std::vector<std::uint8_t>> recovery_avgs(n);
    for (std::size_t b = 0; b < n; ++b) {
        const BlockType t = out.texture.types[b];
        if (t != BlockType::Smooth)
            recovery_avgs[b] = subblock_averages(img, grid.coord(topo.pair[b]), t);
    }

    // Dependency digests must match what the authenticator recomputes from the
    // watermarked pixels, so they are refreshed from the output until stable.
    std::vector<std::uint8_t> dep_avg(n);
    for (std::size_t b = 0; b < n; ++b)
        dep_avg[b] = block_average(img, grid.coord(static_cast<int>(b)));

    out.image = img;
    out.payloads.assign(n, {});
    std::vector<int> residual(n, 0);
    std::vector<bool> dirty(n, true);
    int passes = 0;
    for (; passes < kMaxDigestPasses; ++passes) {
        bool any = false;
        for (std::size_t b = 0; b < n; ++b) {
            if (!dirty[b])
                continue;
            any = true;
            const BlockCoord bc = grid.coord(static_cast<int>(b));
            const auto prev = static_cast<std::size_t>(topo.chains.prev[b]);
            const auto next = static_cast<std::size_t>(topo.chains.next[b]);
            out.payloads[b] = assemble_payload(out.texture.types[b], type_word[b], dep_avg[prev], dep_avg[next],
                                               recovery_avgs[b]);
            const BlockEmbedding e = embed_block(read_block(img, bc), out.payloads[b], topo.positions[b], step);
            write_block(out.image, bc, e.pixels);
            residual[b] = e.residual_errors;
        }
        if (!any)
            break;
        std::fill(dirty.begin(), dirty.end(), false);
        for (std::size_t b = 0; b < n; ++b) {
            const std::uint8_t now = block_average(out.image, grid.coord(static_cast<int>(b)));
            if (msb5_encode(now) != msb5_encode(dep_avg[b])) {
                dep_avg[b] = now;
                dirty[static_cast<std::size_t>(topo.chains.prev[b])] = true;
                dirty[static_cast<std::size_t>(topo.chains.next[b])] = true;
            }
        }
    }

    EmbedReport& rep = out.report;
    rep.config = cfg;
    rep.digest_passes = passes;
    for (std::size_t b = 0; b < n; ++b) {
        rep.residual_bit_errors += residual[b];
        const std::uint8_t now = block_average(out.image, grid.coord(static_cast<int>(b)));
        rep.digest_mismatches += msb5_encode(now) != msb5_encode(dep_avg[b]) ? 1 : 0;
        switch (out.texture.types[b]) {
        case BlockType::Smooth: ++rep.smooth_blocks; break;
        case BlockType::Normal: ++rep.normal_blocks; break;
        case BlockType::Rough: ++rep.rough_blocks; break;
        }
    }
    rep.psnr = psnr(img, out.image);
    rep.ssim = ssim(img, out.image);
    return out;
}

int verify_embedding(const GrayImage& wm, const Config& cfg, std::span<const Bits> expected)
{
    cfg.validate();
    const BlockGrid grid = BlockGrid::for_watermarking(wm);
    if (expected.size() != static_cast<std::size_t>(grid.count()))
        throw std::invalid_argument("expected payload count does not match block grid");
    int errors = 0;
    for (int b = 0; b < grid.count(); ++b) {
        const SlotBits got = extract_block_bits(wm, cfg, grid.coord(b));
        const Bits& want = expected[static_cast<std::size_t>(b)];
        for (std::size_t i = 0; i < want.size() && i < got.size(); ++i)
            errors += got[i] != want[i] ? 1 : 0;
    }
    return errors;
}

} // namespace sfw
