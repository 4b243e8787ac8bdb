#include "sfw/transform.hpp"

#include <stdexcept>

namespace sfw {

namespace {

constexpr int kN = 16;
constexpr int kHalf = kN / 2;

// In-place style 1-D lifting on a strided view of 16 samples.
// Output: low[0..7], high[0..7].
void lift_forward(const int* x, int stride, int* low, int* high)
{
    auto at = [&](int i) {
        if (i >= kN)
            i = 2 * (kN - 1) - i; // x[N] := x[N-2]
        return x[i * stride];
    };
    for (int n = 0; n < kHalf; ++n)
        high[n] = at(2 * n + 1) - ((at(2 * n) + at(2 * n + 2)) >> 1);
    for (int n = 0; n < kHalf; ++n) {
        const int prev = high[n == 0 ? 0 : n - 1];
        low[n] = at(2 * n) + ((prev + high[n] + 2) >> 2);
    }
}

void lift_inverse(const int* low, const int* high, int* x, int stride)
{
    int even[kHalf + 1];
    for (int n = 0; n < kHalf; ++n) {
        const int prev = high[n == 0 ? 0 : n - 1];
        even[n] = low[n] - ((prev + high[n] + 2) >> 2);
    }
    even[kHalf] = even[kHalf - 1]; // x[N] := x[N-2]
    for (int n = 0; n < kHalf; ++n) {
        x[(2 * n) * stride] = even[n];
        x[(2 * n + 1) * stride] = high[n] + ((even[n] + even[n + 1]) >> 1);
    }
}

} // namespace

BlockSubbands iwt_forward_block(const Block16& block)
{
    // Rows: columns 0..7 low, 8..15 high.
    Block16 rows{};
    for (int r = 0; r < kN; ++r)
        lift_forward(&block[r * kN], 1, &rows[r * kN], &rows[r * kN + kHalf]);

    // Columns: rows 0..7 low, 8..15 high.
    Block16 full{};
    for (int c = 0; c < kN; ++c) {
        int low[kHalf], high[kHalf];
        lift_forward(&rows[c], kN, low, high);
        for (int n = 0; n < kHalf; ++n) {
            full[n * kN + c] = low[n];
            full[(n + kHalf) * kN + c] = high[n];
        }
    }

    BlockSubbands sb;
    for (int r = 0; r < kHalf; ++r) {
        for (int c = 0; c < kHalf; ++c) {
            sb.ll[r * kHalf + c] = full[r * kN + c];
            sb.hl[r * kHalf + c] = full[r * kN + c + kHalf];
            sb.lh[r * kHalf + c] = full[(r + kHalf) * kN + c];
            sb.hh[r * kHalf + c] = full[(r + kHalf) * kN + c + kHalf];
        }
    }
    return sb;
}

Block16 iwt_inverse_block(const BlockSubbands& sb)
{
    Block16 full{};
    for (int r = 0; r < kHalf; ++r) {
        for (int c = 0; c < kHalf; ++c) {
            full[r * kN + c] = sb.ll[r * kHalf + c];
            full[r * kN + c + kHalf] = sb.hl[r * kHalf + c];
            full[(r + kHalf) * kN + c] = sb.lh[r * kHalf + c];
            full[(r + kHalf) * kN + c + kHalf] = sb.hh[r * kHalf + c];
        }
    }

    Block16 rows{};
    for (int c = 0; c < kN; ++c) {
        int low[kHalf], high[kHalf];
        for (int n = 0; n < kHalf; ++n) {
            low[n] = full[n * kN + c];
            high[n] = full[(n + kHalf) * kN + c];
        }
        lift_inverse(low, high, &rows[c], kN);
    }

    Block16 out{};
    for (int r = 0; r < kN; ++r)
        lift_inverse(&rows[r * kN], &rows[r * kN + kHalf], &out[r * kN], 1);
    return out;
}

QimStep::QimStep(int s) : s_(s)
{
    if (s < 2)
        throw std::invalid_argument("QIM step must be at least 2");
}

int qim_embed(int c, int w, QimStep step)
{
    const int s = step.value();
    const int v1 = 2 * s * floor_div(c, 2 * s) + (w ? s : 0);
    const int v2 = v1 + 2 * s;
    const int d1 = c > v1 ? c - v1 : v1 - c;
    const int d2 = c > v2 ? c - v2 : v2 - c;
    return d1 <= d2 ? v1 : v2;
}

int qim_extract(int c, QimStep step)
{
    const int s = step.value();
    const int q = floor_div(2 * c + s, 2 * s);
    return q & 1;
}

} // namespace sfw
