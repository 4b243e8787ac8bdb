#include "sfw/recovery.hpp"

#include "sfw/payload.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sfw {

namespace {

std::uint8_t mean_rounded(std::initializer_list<int> v)
{
    int sum = 0;
    for (int x : v)
        sum += x;
    const int n = static_cast<int>(v.size());
    return static_cast<std::uint8_t>((2 * sum + n) / (2 * n));
}

} // namespace

Cells3x3 reform_to_3x3(std::span<const std::uint8_t> values, BlockType type)
{
    if (values.size() != static_cast<std::size_t>(subblock_count(type)))
        throw std::invalid_argument("value count does not match block type");
    Cells3x3 out{};
    switch (type) {
    case BlockType::Smooth:
        out.fill(values[0]);
        break;
    case BlockType::Normal: {
        const int a = values[0], b = values[1], c = values[2], d = values[3];
        out = {static_cast<std::uint8_t>(a), mean_rounded({a, b}), static_cast<std::uint8_t>(b),
               mean_rounded({a, c}), mean_rounded({a, b, c, d}), mean_rounded({b, d}),
               static_cast<std::uint8_t>(c), mean_rounded({c, d}), static_cast<std::uint8_t>(d)};
        break;
    }
    case BlockType::Rough:
        std::copy(values.begin(), values.end(), out.begin());
        break;
    }
    return out;
}

std::size_t ValueGrid::missing_count() const noexcept
{
    return static_cast<std::size_t>(std::count(missing.begin(), missing.end(), true));
}

namespace {

void put_cells(ValueGrid& g, BlockCoord b, const Cells3x3& cells, CellSource src)
{
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            const std::size_t k = g.index(b.bx * 3 + j, b.by * 3 + i);
            g.value[k] = cells[static_cast<std::size_t>(i * 3 + j)];
            g.missing[k] = false;
            g.source[k] = src;
        }
    }
}

std::vector<std::uint8_t> decode_digests(std::span<const std::uint8_t> digests)
{
    std::vector<std::uint8_t> out;
    out.reserve(digests.size());
    for (auto d : digests)
        out.push_back(msb5_decode(d));
    return out;
}

} // namespace

ValueGrid recovery_grid(const GrayImage& img, const BlockMask& rebuild, const BlockMask& trusted,
                        std::span<const BlockType> types, const Topology& topo,
                        std::span<const SlotBits> extracted)
{
    const BlockGrid& grid = topo.grid;
    const auto n = static_cast<std::size_t>(grid.count());
    if (types.size() != n || extracted.size() != n || rebuild.size() != n || trusted.size() != n)
        throw std::invalid_argument("recovery inputs do not match the block grid");
    if (img.width() != grid.width_px() || img.height() != grid.height_px())
        throw std::invalid_argument("image does not match the block grid");

    ValueGrid g(grid.blocks_w * 3, grid.blocks_h * 3);
    auto is_trusted = [&](int b) { return trusted.flags[static_cast<std::size_t>(b)]; };

    for (int b = 0; b < grid.count(); ++b) {
        const BlockCoord bc = grid.coord(b);
        const auto bi = static_cast<std::size_t>(b);
        if (!rebuild.flags[bi]) {
            const auto avgs = subblock_averages(img, bc, BlockType::Rough);
            put_cells(g, bc, reform_to_3x3(avgs, BlockType::Rough), CellSource::Measured);
            continue;
        }

        const BlockType t = types[bi];
        if (t != BlockType::Smooth) {
            const int p = topo.pair[bi];
            if (p >= 0 && p != b && is_trusted(p)) {
                const ParsedPayload parsed = parse_payload(extracted[static_cast<std::size_t>(p)], t);
                const auto values = decode_digests(parsed.payload.recovery);
                put_cells(g, bc, reform_to_3x3(values, t), CellSource::PairDigest);
                continue;
            }
        }

        // Whole-block digest: prev stores it in its dep_next field, next in dep_prev.
        const int prev = topo.chains.prev[bi];
        const int next = topo.chains.next[bi];
        int offset = -1, holder = -1;
        if (is_trusted(prev)) {
            holder = prev;
            offset = kDepNextOffset;
        } else if (is_trusted(next)) {
            holder = next;
            offset = kDepPrevOffset;
        }
        if (holder >= 0) {
            const auto digest = static_cast<std::uint8_t>(read_field(extracted[static_cast<std::size_t>(holder)], offset, 5));
            Cells3x3 cells{};
            cells.fill(msb5_decode(digest));
            put_cells(g, bc, cells, CellSource::DependentDigest);
        }
        // otherwise the cells stay missing
    }
    return g;
}

ValueGrid recovery_grid(const GrayImage& img, const BlockMask& tampered, std::span<const BlockType> types,
                        const Topology& topo, std::span<const SlotBits> extracted)
{
    BlockMask trusted = tampered;
    trusted.flags.flip();
    return recovery_grid(img, tampered, trusted, types, topo, extracted);
}

int fill_gaps(ValueGrid& g)
{
    if (g.missing_count() == g.missing.size() && !g.missing.empty())
        throw std::invalid_argument("no known cells to fill from");
    int rounds = 0;
    while (g.missing_count() > 0) {
        ++rounds;
        const auto known = g.missing; // snapshot: true = still missing
        for (int cy = 0; cy < g.cells_h; ++cy) {
            for (int cx = 0; cx < g.cells_w; ++cx) {
                const std::size_t k = g.index(cx, cy);
                if (!known[k])
                    continue;
                int sum = 0, count = 0;
                constexpr int dx[] = {-1, 1, 0, 0};
                constexpr int dy[] = {0, 0, -1, 1};
                for (int d = 0; d < 4; ++d) {
                    const int x = cx + dx[d], y = cy + dy[d];
                    if (x < 0 || y < 0 || x >= g.cells_w || y >= g.cells_h)
                        continue;
                    const std::size_t kk = g.index(x, y);
                    if (!known[kk]) {
                        sum += g.value[kk];
                        ++count;
                    }
                }
                if (count > 0) {
                    g.value[k] = static_cast<std::uint8_t>((2 * sum + count) / (2 * count));
                    g.missing[k] = false;
                    g.source[k] = CellSource::Diffused;
                }
            }
        }
    }
    return rounds;
}

namespace {

// Catmull-Rom weights for taps at offsets -1, 0, 1, 2 from floor(u).
std::array<double, 4> cubic_weights(double t)
{
    constexpr double a = -0.5;
    auto k = [](double x) {
        x = std::abs(x);
        if (x <= 1.0)
            return (a + 2.0) * x * x * x - (a + 3.0) * x * x + 1.0;
        if (x < 2.0)
            return a * x * x * x - 5.0 * a * x * x + 8.0 * a * x - 4.0 * a;
        return 0.0;
    };
    return {k(t + 1.0), k(t), k(1.0 - t), k(2.0 - t)};
}

struct Taps {
    std::array<int, 4> index{};
    std::array<double, 4> weight{};
};

// Output pixel p (centre p+0.5) in cell units: cell c is centred at (2c+1)*8/3.
std::vector<Taps> axis_taps(int pixels, int cells)
{
    std::vector<Taps> taps(static_cast<std::size_t>(pixels));
    for (int p = 0; p < pixels; ++p) {
        const double u = (p + 0.5) * 3.0 / 16.0 - 0.5;
        const double base = std::floor(u);
        const auto w = cubic_weights(u - base);
        for (int k = 0; k < 4; ++k) {
            taps[static_cast<std::size_t>(p)].index[static_cast<std::size_t>(k)] =
                std::clamp(static_cast<int>(base) - 1 + k, 0, cells - 1);
            taps[static_cast<std::size_t>(p)].weight[static_cast<std::size_t>(k)] = w[static_cast<std::size_t>(k)];
        }
    }
    return taps;
}

} // namespace

GrayImage bicubic_reconstruct(const ValueGrid& grid, int width, int height)
{
    if (grid.missing_count() != 0)
        throw std::invalid_argument("value grid still has missing cells");
    const auto tx = axis_taps(width, grid.cells_w);
    const auto ty = axis_taps(height, grid.cells_h);

    // Horizontal pass into a cells_h x width buffer, then vertical.
    std::vector<double> rows(static_cast<std::size_t>(grid.cells_h) * width);
    for (int cy = 0; cy < grid.cells_h; ++cy) {
        for (int x = 0; x < width; ++x) {
            const Taps& t = tx[static_cast<std::size_t>(x)];
            double acc = 0.0;
            for (int k = 0; k < 4; ++k)
                acc += t.weight[k] * grid.value[grid.index(t.index[k], cy)];
            rows[static_cast<std::size_t>(cy) * width + x] = acc;
        }
    }
    GrayImage out(width, height);
    for (int y = 0; y < height; ++y) {
        const Taps& t = ty[static_cast<std::size_t>(y)];
        for (int x = 0; x < width; ++x) {
            double acc = 0.0;
            for (int k = 0; k < 4; ++k)
                acc += t.weight[k] * rows[static_cast<std::size_t>(t.index[k]) * width + x];
            out.at(x, y) = static_cast<std::uint8_t>(std::clamp(std::lround(acc), 0L, 255L));
        }
    }
    return out;
}

GrayImage recover(const GrayImage& img, const BlockMask& mask, const GrayImage& estimate)
{
    if (!img.same_size(estimate))
        throw std::invalid_argument("estimate and image dimensions differ");
    if (mask.blocks_w * kBlockSize > img.width() || mask.blocks_h * kBlockSize > img.height())
        throw std::invalid_argument("mask exceeds image");
    GrayImage out = img;
    for (int by = 0; by < mask.blocks_h; ++by)
        for (int bx = 0; bx < mask.blocks_w; ++bx)
            if (mask.at(bx, by))
                for (int y = by * kBlockSize; y < (by + 1) * kBlockSize; ++y)
                    for (int x = bx * kBlockSize; x < (bx + 1) * kBlockSize; ++x)
                        out.at(x, y) = estimate.at(x, y);
    return out;
}

RecoveryResult recover_image(const GrayImage& img, const Config& cfg, const std::optional<BlockMask>& mask_override)
{
    RecoveryResult r;
    r.detection = detect(img, cfg);
    r.mask = mask_override.value_or(r.detection.mask);
    if (r.mask.blocks_w != r.detection.grid.blocks_w || r.mask.blocks_h != r.detection.grid.blocks_h)
        throw std::invalid_argument("mask does not match the block grid");
    if (r.mask.count() == r.mask.size())
        throw std::runtime_error("every block is flagged as tampered; nothing to recover from");

    r.grid = recovery_grid(img, r.mask, r.detection.votes.types, r.detection.topology, r.detection.extracted);
    fill_gaps(r.grid);
    r.estimate = bicubic_reconstruct(r.grid, img.width(), img.height());
    r.recovered = recover(img, r.mask, r.estimate);
    return r;
}

} // namespace sfw
