#include "support.hpp"

#include "sfw/attack.hpp"
#include "sfw/embedder.hpp"
#include "sfw/metrics.hpp"
#include "sfw/recovery.hpp"

#include <doctest.h>

#include <cmath>

using namespace sfw;

namespace {

struct Fixture {
    Config cfg;
    GrayImage original;
    EmbedResult wm;
    Detection det;

    explicit Fixture(const char* name, std::uint64_t key = 17)
    {
        cfg.key = SecretKey{key};
        original = testing::corpus_image(name);
        wm = embed(original, cfg);
        det = detect(wm.image, cfg);
    }

    int first_of(BlockType t, int skip = 0) const
    {
        for (int b = 0; b < det.grid.count(); ++b)
            if (det.votes.types[static_cast<std::size_t>(b)] == t && skip-- == 0)
                return b;
        return -1;
    }

    BlockMask only(int b) const
    {
        BlockMask m(det.grid.blocks_w, det.grid.blocks_h);
        m.flags[static_cast<std::size_t>(b)] = true;
        return m;
    }
};

std::vector<std::uint8_t> cells_of(const ValueGrid& g, BlockCoord b)
{
    std::vector<std::uint8_t> out;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            out.push_back(g.value[g.index(b.bx * 3 + j, b.by * 3 + i)]);
    return out;
}

CellSource source_of(const ValueGrid& g, BlockCoord b)
{
    return g.source[g.index(b.bx * 3 + 1, b.by * 3 + 1)];
}

} // namespace

TEST_SUITE("recovery") {

TEST_CASE("reform to the 3x3 layout")
{
    const std::vector<std::uint8_t> s{50};
    for (auto v : reform_to_3x3(s, BlockType::Smooth))
        CHECK(v == 50);
    const std::vector<std::uint8_t> n{10, 20, 30, 40};
    CHECK(reform_to_3x3(n, BlockType::Normal) == Cells3x3{10, 15, 20, 20, 25, 30, 30, 35, 40});
    const std::vector<std::uint8_t> odd{0, 1, 2, 4};
    // rounded means: (0+1)/2 -> 1, (0+1+2+4)/4 = 1.75 -> 2
    CHECK(reform_to_3x3(odd, BlockType::Normal) == Cells3x3{0, 1, 1, 1, 2, 3, 2, 3, 4});
    const std::vector<std::uint8_t> r{9, 8, 7, 6, 5, 4, 3, 2, 1};
    CHECK(reform_to_3x3(r, BlockType::Rough) == Cells3x3{9, 8, 7, 6, 5, 4, 3, 2, 1});
    CHECK_THROWS(reform_to_3x3(n, BlockType::Rough));
    CHECK_THROWS(reform_to_3x3(s, BlockType::Normal));
}

TEST_CASE("grid without tampering holds measured thirds-averages")
{
    const Fixture f("coffee");
    const BlockMask none(32, 32);
    const ValueGrid g = recovery_grid(f.wm.image, none, f.det.votes.types, f.det.topology, f.det.extracted);
    CHECK(g.missing_count() == 0);
    for (int b = 0; b < 1024; b += 7) {
        const BlockCoord bc = f.det.grid.coord(b);
        CHECK(cells_of(g, bc) == subblock_averages(f.wm.image, bc, BlockType::Rough));
        CHECK(source_of(g, bc) == CellSource::Measured);
    }
}

TEST_CASE("tampered smooth block takes the digest kept by its predecessor")
{
    const Fixture f("moon");
    const int b = f.first_of(BlockType::Smooth);
    REQUIRE(b >= 0);
    const BlockCoord bc = f.det.grid.coord(b);
    const ValueGrid g = recovery_grid(f.wm.image, f.only(b), f.det.votes.types, f.det.topology, f.det.extracted);
    const std::uint8_t expect = msb5_decode(msb5_encode(block_average(f.wm.image, bc)));
    for (auto v : cells_of(g, bc)) {
        CHECK(v == expect);
        CHECK(std::abs(v - block_average(f.wm.image, bc)) <= 4);
    }
    CHECK(source_of(g, bc) == CellSource::DependentDigest);
}

TEST_CASE("tampered rough block takes its pair's recovery digest")
{
    const Fixture f("stereo_motorcycle");
    const int b = f.first_of(BlockType::Rough, 3);
    REQUIRE(b >= 0);
    REQUIRE(f.det.topology.pair[static_cast<std::size_t>(b)] != b);
    const BlockCoord bc = f.det.grid.coord(b);
    const ValueGrid g = recovery_grid(f.wm.image, f.only(b), f.det.votes.types, f.det.topology, f.det.extracted);
    std::vector<std::uint8_t> expect;
    for (auto v : subblock_averages(f.original, bc, BlockType::Rough))
        expect.push_back(msb5_decode(msb5_encode(v)));
    CHECK(cells_of(g, bc) == expect);
    CHECK(source_of(g, bc) == CellSource::PairDigest);
}

TEST_CASE("tampered normal block reforms its pair digest")
{
    const Fixture f("chelsea");
    const int b = f.first_of(BlockType::Normal, 5);
    REQUIRE(b >= 0);
    const BlockCoord bc = f.det.grid.coord(b);
    const ValueGrid g = recovery_grid(f.wm.image, f.only(b), f.det.votes.types, f.det.topology, f.det.extracted);
    std::vector<std::uint8_t> four;
    for (auto v : subblock_averages(f.original, bc, BlockType::Normal))
        four.push_back(msb5_decode(msb5_encode(v)));
    const Cells3x3 reformed = reform_to_3x3(four, BlockType::Normal);
    CHECK(cells_of(g, bc) == std::vector<std::uint8_t>(reformed.begin(), reformed.end()));
}

TEST_CASE("rough block with a tampered pair falls back to the whole-block digest")
{
    const Fixture f("stereo_motorcycle");
    const int b = f.first_of(BlockType::Rough, 3);
    const int p = f.det.topology.pair[static_cast<std::size_t>(b)];
    const BlockCoord bc = f.det.grid.coord(b);
    BlockMask tampered = f.only(b);
    tampered.flags[static_cast<std::size_t>(p)] = true;
    const ValueGrid g = recovery_grid(f.wm.image, tampered, f.det.votes.types, f.det.topology, f.det.extracted);
    const auto cells = cells_of(g, bc);
    for (auto v : cells)
        CHECK(v == cells[0]);
    CHECK(cells[0] == msb5_decode(msb5_encode(block_average(f.wm.image, bc))));
    CHECK(source_of(g, bc) == CellSource::DependentDigest);

    // with prev, next and pair all untrusted the block is left for diffusion
    BlockMask rebuild = tampered;
    BlockMask trusted(32, 32, true);
    trusted.flags[static_cast<std::size_t>(p)] = false;
    trusted.flags[static_cast<std::size_t>(f.det.topology.chains.prev[static_cast<std::size_t>(b)])] = false;
    trusted.flags[static_cast<std::size_t>(f.det.topology.chains.next[static_cast<std::size_t>(b)])] = false;
    ValueGrid h = recovery_grid(f.wm.image, rebuild, trusted, f.det.votes.types, f.det.topology, f.det.extracted);
    CHECK(h.missing_count() >= 9);
    fill_gaps(h);
    CHECK(h.missing_count() == 0);
    CHECK(source_of(h, bc) == CellSource::Diffused);
}

TEST_CASE("gap filling")
{
    ValueGrid g(5, 4);
    CHECK_THROWS(fill_gaps(g));
    g.value[g.index(0, 0)] = 100;
    g.missing[g.index(0, 0)] = false;
    const int rounds = fill_gaps(g);
    CHECK(rounds == 7); // Manhattan distance to the far corner
    for (auto v : g.value)
        CHECK(v == 100);

    ValueGrid two(3, 1);
    two.value = {10, 0, 21};
    two.missing = {false, true, false};
    fill_gaps(two);
    CHECK(two.value[1] == 16); // 15.5 rounds up
}

TEST_CASE("Catmull-Rom reproduces constants and lines")
{
    ValueGrid c(6, 6);
    std::fill(c.value.begin(), c.value.end(), 143);
    std::fill(c.missing.begin(), c.missing.end(), false);
    const GrayImage flat = bicubic_reconstruct(c, 32, 32);
    for (auto v : flat.pixels())
        CHECK(v == 143);

    ValueGrid lin(12, 3);
    for (int cy = 0; cy < 3; ++cy)
        for (int cx = 0; cx < 12; ++cx) {
            lin.value[lin.index(cx, cy)] = static_cast<std::uint8_t>(10 + 17 * cx);
            lin.missing[lin.index(cx, cy)] = false;
        }
    const GrayImage ramp = bicubic_reconstruct(lin, 64, 16);
    for (int x = 0; x < 64; ++x) {
        const double u = (x + 0.5) * 3.0 / 16.0 - 0.5;
        if (u < 1.0 || u > 12 - 2.0)
            continue; // taps clamp at the border
        for (int y = 0; y < 16; ++y)
            CHECK(std::abs(ramp.at(x, y) - (10.0 + 17.0 * u)) <= 0.5 + 1e-9);
    }

    ValueGrid missing(3, 3);
    CHECK_THROWS(bicubic_reconstruct(missing, 16, 16));
}

TEST_CASE("Catmull-Rom overshoot stays within the kernel bound")
{
    // Positive lobe mass per axis is at most 1.125, negative 0.125; in 2-D the
    // output exceeds the data range by at most 0.28125 of its width.
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> d(0, 255);
    for (int trial = 0; trial < 1000; ++trial) {
        ValueGrid g(6, 6);
        int lo = 255, hi = 0;
        for (auto& v : g.value) {
            v = static_cast<std::uint8_t>(d(rng));
            lo = std::min<int>(lo, v);
            hi = std::max<int>(hi, v);
        }
        std::fill(g.missing.begin(), g.missing.end(), false);
        const GrayImage out = bicubic_reconstruct(g, 32, 32);
        const double delta = 0.28125 * (hi - lo) + 0.5;
        for (auto v : out.pixels()) {
            REQUIRE(v >= std::max(0.0, lo - delta));
            REQUIRE(v <= std::min(255.0, hi + delta));
        }
    }
}

TEST_CASE("recover copies only flagged blocks")
{
    const GrayImage img = testing::random_image(64, 64, 1);
    const GrayImage est = testing::random_image(64, 64, 2);
    CHECK(recover(img, BlockMask(4, 4), est) == img);
    CHECK(recover(img, BlockMask(4, 4, true), est) == est);
    BlockMask one(4, 4);
    one.set(2, 1, true);
    const GrayImage out = recover(img, one, est);
    for (int y = 0; y < 64; ++y)
        for (int x = 0; x < 64; ++x)
            CHECK(out.at(x, y) == ((x / 16 == 2 && y / 16 == 1) ? est.at(x, y) : img.at(x, y)));
    CHECK_THROWS(recover(img, one, testing::random_image(32, 64, 2)));
}

TEST_CASE("recovery beats filling the region with the image mean")
{
    double ours = 0.0, naive = 0.0;
    int n = 0;
    const Rect rect{0, 0, 256, 256};
    const BlockMask truth = tamper_truth(512, 512, rect);
    for (const char* name : {"camera", "coffee", "moon", "chelsea"}) {
        const Fixture f(name, 23);
        const GrayImage attacked = jpeg_attack(erase(f.wm.image, rect, 0), 80);
        const RecoveryResult r = recover_image(attacked, f.cfg);
        ours += region_psnr(f.original, r.recovered, truth);

        long sum = 0, count = 0;
        for (int y = 0; y < 512; ++y)
            for (int x = 0; x < 512; ++x)
                if (x >= 256 || y >= 256) {
                    sum += attacked.at(x, y);
                    ++count;
                }
        const GrayImage fill(512, 512, static_cast<std::uint8_t>(sum / count));
        naive += region_psnr(f.original, recover(attacked, truth, fill), truth);
        ++n;
    }
    CHECK(ours / n > naive / n);
}

TEST_CASE("recover_image honours a mask override and rejects a full mask")
{
    const Fixture f("rocket");
    BlockMask m(32, 32);
    m.set(4, 4, true);
    const RecoveryResult r = recover_image(f.wm.image, f.cfg, m);
    CHECK(r.mask == m);
    for (int y = 0; y < 512; ++y)
        for (int x = 0; x < 512; ++x)
            if (x / 16 != 4 || y / 16 != 4)
                REQUIRE(r.recovered.at(x, y) == f.wm.image.at(x, y));
    CHECK_THROWS(recover_image(f.wm.image, f.cfg, BlockMask(32, 32, true)));
    CHECK_THROWS(recover_image(f.wm.image, f.cfg, BlockMask(16, 16)));
}

} // TEST_SUITE
