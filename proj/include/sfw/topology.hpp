#pragma once

#include "sfw/texture.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace sfw {

struct SecretKey {
    std::uint64_t seed = 0;
    friend bool operator==(const SecretKey&, const SecretKey&) = default;
};

/// SplitMix64 generator. Bit-exact: any implementation seeded identically
/// produces the same words.
class Keystream {
public:
    explicit Keystream(std::uint64_t seed) noexcept : state_(seed) { }

    std::uint64_t next() noexcept
    {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z ^= z >> 30;
        z *= 0xBF58476D1CE4E5B9ULL;
        z ^= z >> 27;
        z *= 0x94D049BB133111EBULL;
        z ^= z >> 31;
        return z;
    }

    /// next() mod bound. bound > 0.
    std::uint64_t below(std::uint64_t bound) noexcept { return next() % bound; }

    /// Fisher-Yates from the back: for i = n-1..1 swap(v[i], v[below(i+1)]).
    template <typename T>
    void shuffle(std::span<T> v) noexcept
    {
        for (std::size_t i = v.size(); i-- > 1;) {
            const auto j = static_cast<std::size_t>(below(i + 1));
            std::swap(v[i], v[j]);
        }
    }

private:
    std::uint64_t state_;
};

// Per-purpose stream separation constants (XORed into the key).
inline constexpr std::uint64_t kChainDomain = 0x636861696e73ULL; // "chains"
inline constexpr std::uint64_t kPairDomain = 0x7061697273ULL;    // "pairs"
inline constexpr std::uint64_t kCoeffDomain = 0x636f656666ULL;   // "coeff"
inline constexpr std::uint64_t kTrialDomain = 0x747269616cULL;   // "trial", used by test drivers

/// Area (A..D as 0..3), sub-area (1..4 as 0..3) and slot inside the sub-area.
///
/// The grid is split into four quadrants; quadrant k (raster order) holds sub-area
/// k of every area. Each quadrant is split into 2x2 cells, one per area, in raster
/// order A, B, C, D. Consecutive members of a chain therefore sit in different
/// quadrants, at least a quarter of the image apart.
struct AreaCell {
    int area = 0;
    int subarea = 0;
    int slot = 0;
    friend bool operator==(const AreaCell&, const AreaCell&) = default;
};

std::vector<AreaCell> build_areas(const BlockGrid& grid);
int block_at(const BlockGrid& grid, AreaCell cell);
int slots_per_subarea(const BlockGrid& grid) noexcept;

struct ChainMap {
    std::vector<int> next;
    std::vector<int> prev;
    /// Members of each 4-cycle, sub-area 1 first.
    std::vector<std::array<int, 4>> chains;
    std::vector<int> chain_of;
};

ChainMap build_chains(SecretKey key, const BlockGrid& grid);

/// Greedy farthest-partner matching, done separately for Normal and Rough
/// blocks. Smooth blocks map to -1; an odd leftover maps to itself.
std::vector<int> build_pairs(SecretKey key, const BlockGrid& grid, std::span<const BlockType> types);

inline constexpr int kPayloadSlots = 63;
using CoeffPositions = std::array<std::uint8_t, kPayloadSlots>;

/// 63 distinct LL1 indices in [0,64) for one block.
CoeffPositions coeff_positions(SecretKey key, int block_index);

/// Everything the embedder and the authenticator derive from the key.
struct Topology {
    BlockGrid grid;
    std::vector<AreaCell> areas;
    ChainMap chains;
    std::vector<int> pair;
    std::vector<CoeffPositions> positions;
};

Topology build_topology(SecretKey key, const BlockGrid& grid, std::span<const BlockType> types);

} // namespace sfw
