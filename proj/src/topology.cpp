#include "sfw/topology.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace sfw {

namespace {

void require_divisible(const BlockGrid& grid)
{
    if (grid.blocks_w <= 0 || grid.blocks_h <= 0 || grid.blocks_w % 4 != 0 || grid.blocks_h % 4 != 0)
        throw std::invalid_argument("block grid sides must be positive multiples of 4");
}

} // namespace

int slots_per_subarea(const BlockGrid& grid) noexcept
{
    return (grid.blocks_w / 4) * (grid.blocks_h / 4);
}

std::vector<AreaCell> build_areas(const BlockGrid& grid)
{
    require_divisible(grid);
    const int qw = grid.blocks_w / 2, qh = grid.blocks_h / 2;
    const int cw = grid.blocks_w / 4, ch = grid.blocks_h / 4;
    std::vector<AreaCell> out(static_cast<std::size_t>(grid.count()));
    for (int by = 0; by < grid.blocks_h; ++by) {
        for (int bx = 0; bx < grid.blocks_w; ++bx) {
            const int lx = bx % qw, ly = by % qh;
            AreaCell& cell = out[static_cast<std::size_t>(grid.index({bx, by}))];
            cell.subarea = (by >= qh ? 2 : 0) + (bx >= qw ? 1 : 0);
            cell.area = (ly >= ch ? 2 : 0) + (lx >= cw ? 1 : 0);
            cell.slot = (ly % ch) * cw + (lx % cw);
        }
    }
    return out;
}

int block_at(const BlockGrid& grid, AreaCell cell)
{
    const int qw = grid.blocks_w / 2, qh = grid.blocks_h / 2;
    const int cw = grid.blocks_w / 4, ch = grid.blocks_h / 4;
    const int bx = (cell.subarea % 2) * qw + (cell.area % 2) * cw + cell.slot % cw;
    const int by = (cell.subarea / 2) * qh + (cell.area / 2) * ch + cell.slot / cw;
    return grid.index({bx, by});
}

ChainMap build_chains(SecretKey key, const BlockGrid& grid)
{
    require_divisible(grid);
    const int slots = slots_per_subarea(grid);
    const auto n = static_cast<std::size_t>(grid.count());
    ChainMap map;
    map.next.assign(n, -1);
    map.prev.assign(n, -1);
    map.chain_of.assign(n, -1);
    map.chains.reserve(n / 4);

    Keystream ks(key.seed ^ kChainDomain);
    std::vector<int> perm(static_cast<std::size_t>(slots));
    for (int area = 0; area < 4; ++area) {
        std::array<std::vector<int>, 4> sigma;
        for (int s = 0; s < 4; ++s) {
            std::iota(perm.begin(), perm.end(), 0);
            ks.shuffle(std::span<int>(perm));
            sigma[s] = perm;
        }
        for (int k = 0; k < slots; ++k) {
            std::array<int, 4> members{};
            for (int s = 0; s < 4; ++s)
                members[s] = block_at(grid, {area, s, sigma[s][k]});
            const int id = static_cast<int>(map.chains.size());
            for (int s = 0; s < 4; ++s) {
                const int b = members[s];
                const int nb = members[(s + 1) % 4];
                map.next[b] = nb;
                map.prev[nb] = b;
                map.chain_of[b] = id;
            }
            map.chains.push_back(members);
        }
    }
    return map;
}

std::vector<int> build_pairs(SecretKey key, const BlockGrid& grid, std::span<const BlockType> types)
{
    const auto n = static_cast<std::size_t>(grid.count());
    if (types.size() != n)
        throw std::invalid_argument("type map does not match block grid");

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    Keystream ks(key.seed ^ kPairDomain);
    ks.shuffle(std::span<int>(order));

    std::vector<int> pair(n, -1);
    for (BlockType t : {BlockType::Normal, BlockType::Rough}) {
        std::vector<int> members;
        for (std::size_t i = 0; i < n; ++i)
            if (types[i] == t)
                members.push_back(static_cast<int>(i));

        for (int b : order) {
            if (types[static_cast<std::size_t>(b)] != t || pair[static_cast<std::size_t>(b)] != -1)
                continue;
            const BlockCoord cb = grid.coord(b);
            int best = -1;
            long best_d2 = -1;
            for (int m : members) { // ascending index: first maximum wins ties
                if (m == b || pair[static_cast<std::size_t>(m)] != -1)
                    continue;
                const BlockCoord cm = grid.coord(m);
                const long dx = cm.bx - cb.bx, dy = cm.by - cb.by;
                const long d2 = dx * dx + dy * dy;
                if (d2 > best_d2) {
                    best_d2 = d2;
                    best = m;
                }
            }
            if (best < 0)
                best = b;
            pair[static_cast<std::size_t>(b)] = best;
            pair[static_cast<std::size_t>(best)] = b;
        }
    }
    return pair;
}

CoeffPositions coeff_positions(SecretKey key, int block_index)
{
    Keystream ks(key.seed ^ kCoeffDomain ^ (static_cast<std::uint64_t>(block_index) * 0x9E3779B97F4A7C15ULL));
    std::array<std::uint8_t, 64> all{};
    std::iota(all.begin(), all.end(), std::uint8_t{0});
    ks.shuffle(std::span<std::uint8_t>(all));
    CoeffPositions out{};
    std::copy_n(all.begin(), kPayloadSlots, out.begin());
    return out;
}

Topology build_topology(SecretKey key, const BlockGrid& grid, std::span<const BlockType> types)
{
    Topology topo;
    topo.grid = grid;
    topo.areas = build_areas(grid);
    topo.chains = build_chains(key, grid);
    topo.pair = build_pairs(key, grid, types);
    topo.positions.reserve(static_cast<std::size_t>(grid.count()));
    for (int b = 0; b < grid.count(); ++b)
        topo.positions.push_back(coeff_positions(key, b));
    return topo;
}

} // namespace sfw
