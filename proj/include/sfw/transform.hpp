#pragma once

#include <array>
#include <cstdint>

namespace sfw {

/// 16x16 integer samples, row-major.
using Block16 = std::array<int, 256>;
/// 8x8 integer coefficients, row-major.
using Band8 = std::array<int, 64>;

/// One-level decomposition of a 16x16 block.
/// ll: low/low, hl: horizontal detail (high along rows), lh: vertical detail,
/// hh: diagonal detail.
struct BlockSubbands {
    Band8 ll{};
    Band8 hl{};
    Band8 lh{};
    Band8 hh{};

    friend bool operator==(const BlockSubbands&, const BlockSubbands&) = default;
};

// Reversible CDF 5/3 lifting, rows then columns, with symmetric extension.
BlockSubbands iwt_forward_block(const Block16& block);
Block16 iwt_inverse_block(const BlockSubbands& sb);

/// QIM quantization step. Always >= 2.
class QimStep {
public:
    explicit QimStep(int s);
    int value() const noexcept { return s_; }

private:
    int s_;
};

/// Snap `c` to the nearest point of the lattice for bit `w` (spacing 2S, offset
/// S for w=1). Between the two candidates of the cell, the lower wins ties.
int qim_embed(int c, int w, QimStep s);

/// Parity of round(c/S), rounding halves up.
int qim_extract(int c, QimStep s);

/// floor(a/b) for b > 0.
constexpr int floor_div(int a, int b) noexcept
{
    const int q = a / b;
    return (a % b != 0 && a < 0) ? q - 1 : q;
}

} // namespace sfw
