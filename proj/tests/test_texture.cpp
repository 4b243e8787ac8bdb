#include "support.hpp"

#include "sfw/texture.hpp"

#include <doctest.h>

#include <cmath>

using namespace sfw;

namespace {

GrayImage one_block(std::uint8_t (*f)(int x, int y))
{
    GrayImage img(16, 16);
    for (int y = 0; y < 16; ++y)
        for (int x = 0; x < 16; ++x)
            img.at(x, y) = f(x, y);
    return img;
}

} // namespace

TEST_SUITE("texture") {

TEST_CASE("block standard deviation")
{
    const BlockGrid g{1, 1};
    CHECK(block_std(GrayImage(16, 16, 93), g)[0] == 0.0);
    auto half = one_block([](int, int y) -> std::uint8_t { return y < 8 ? 0 : 255; });
    CHECK(block_std(half, g)[0] == doctest::Approx(127.5));
    auto checker = one_block([](int x, int y) -> std::uint8_t { return (x + y) % 2 ? 255 : 0; });
    CHECK(block_std(checker, g)[0] == doctest::Approx(127.5));

    // population, not sample: one 16 among zeros
    GrayImage spike(16, 16, 0);
    spike.at(3, 3) = 16;
    const double mean = 16.0 / 256.0;
    const double var = (255.0 * mean * mean + (16.0 - mean) * (16.0 - mean)) / 256.0;
    CHECK(block_std(spike, g)[0] == doctest::Approx(std::sqrt(var)));
}

TEST_CASE("block_std is row-major over the grid")
{
    GrayImage img(32, 16, 0);
    for (int y = 0; y < 16; ++y)
        for (int x = 16; x < 32; ++x)
            img.at(x, y) = (x + y) % 2 ? 200 : 0;
    const auto s = block_std(img, BlockGrid{2, 1});
    CHECK(s[0] == 0.0);
    CHECK(s[1] == doctest::Approx(100.0));
}

TEST_CASE("normalize")
{
    const std::vector<double> v{10, 20, 30};
    const auto n = normalize(v);
    CHECK(n[0] == 0.0);
    CHECK(n[1] == doctest::Approx(0.5));
    CHECK(n[2] == 1.0);

    const std::vector<double> flat{4, 4, 4};
    for (double x : normalize(flat))
        CHECK(x == 0.0);
    CHECK_THROWS(normalize(std::vector<double>{}));

    std::mt19937 rng(4);
    std::uniform_real_distribution<double> d(0.0, 90.0);
    std::vector<double> r(200);
    for (auto& x : r)
        x = d(rng);
    const auto nr = normalize(r);
    for (std::size_t i = 0; i < r.size(); ++i) {
        CHECK(nr[i] >= 0.0);
        CHECK(nr[i] <= 1.0);
        for (std::size_t j = 0; j < r.size(); j += 17)
            if (r[i] < r[j])
                CHECK(nr[i] <= nr[j]);
    }
}

TEST_CASE("categorize uses left-closed intervals")
{
    CHECK(categorize(0.05, 0.1, 0.3) == BlockType::Smooth);
    CHECK(categorize(0.0, 0.1, 0.3) == BlockType::Smooth);
    CHECK(categorize(0.1, 0.1, 0.3) == BlockType::Normal);
    CHECK(categorize(0.2999, 0.1, 0.3) == BlockType::Normal);
    CHECK(categorize(0.3, 0.1, 0.3) == BlockType::Rough);
    CHECK(categorize(1.0, 0.1, 0.3) == BlockType::Rough);
    CHECK_THROWS(categorize(0.5, 0.3, 0.1));
    CHECK_THROWS(categorize(0.5, 0.0, 0.3));
    CHECK_THROWS(categorize(0.5, 0.1, 1.5));
}

TEST_CASE("categorize partitions [0,1]")
{
    int counts[4] = {0, 0, 0, 0};
    for (int i = 0; i <= 1000; ++i) {
        const BlockType t = categorize(i / 1000.0, 0.1, 0.3);
        ++counts[static_cast<int>(t)];
    }
    CHECK(counts[1] == 100);
    CHECK(counts[2] == 200);
    CHECK(counts[3] == 701);
}

TEST_CASE("sub-block averages")
{
    for (BlockType t : {BlockType::Smooth, BlockType::Normal, BlockType::Rough}) {
        const auto v = subblock_averages(GrayImage(16, 16, 61), {0, 0}, t);
        CHECK(v.size() == static_cast<std::size_t>(subblock_count(t)));
        for (auto x : v)
            CHECK(x == 61);
    }
    auto quads = one_block([](int x, int y) -> std::uint8_t { return static_cast<std::uint8_t>(10 + 10 * (x / 8) + 20 * (y / 8)); });
    CHECK(subblock_averages(quads, {0, 0}, BlockType::Normal) == std::vector<std::uint8_t>{10, 20, 30, 40});

    auto left5 = one_block([](int x, int) -> std::uint8_t { return x < 5 ? 0 : 255; });
    CHECK(subblock_averages(left5, {0, 0}, BlockType::Rough)
          == std::vector<std::uint8_t>{0, 255, 255, 0, 255, 255, 0, 255, 255});
}

TEST_CASE("sub-block partitions tile the block")
{
    for (BlockType t : {BlockType::Smooth, BlockType::Normal, BlockType::Rough}) {
        const auto e = subblock_edges(t);
        CHECK(e.front() == 0);
        CHECK(e.back() == 16);
        CHECK(static_cast<int>((e.size() - 1) * (e.size() - 1)) == subblock_count(t));
        for (std::size_t i = 1; i < e.size(); ++i)
            CHECK(e[i] > e[i - 1]);
    }
    const auto r = subblock_edges(BlockType::Rough);
    CHECK(std::vector<int>(r.begin(), r.end()) == std::vector<int>{0, 5, 10, 16});
}

TEST_CASE("block average rounds half up")
{
    CHECK(block_average(GrayImage(16, 16, 77), {0, 0}) == 77);
    CHECK(block_average(GrayImage(16, 16, 255), {0, 0}) == 255);
    auto half = one_block([](int, int y) -> std::uint8_t { return y < 8 ? 0 : 1; });
    CHECK(block_average(half, {0, 0}) == 1);

    GrayImage two(32, 16, 10);
    for (int y = 0; y < 16; ++y)
        for (int x = 16; x < 32; ++x)
            two.at(x, y) = 200;
    CHECK(block_average(two, {1, 0}) == 200);
}

TEST_CASE("5-MSB digests")
{
    CHECK(msb5_encode(255) == 0b11111);
    CHECK(msb5_encode(130) == 0b10000);
    CHECK(msb5_encode(0) == 0);
    CHECK(msb5_decode(0b11111) == 252);
    CHECK(msb5_decode(0) == 4);
    CHECK(msb5_decode(0b10000) == 132);
    CHECK_THROWS(msb5_encode(256));
    CHECK_THROWS(msb5_encode(-1));
    for (int v = 0; v < 256; ++v)
        CHECK(std::abs(msb5_decode(msb5_encode(v)) - v) <= 4);
}

TEST_CASE("texture map of a mixed image")
{
    GrayImage img(64, 64, 120);
    // rough block (1,0): checkerboard; normal block (2,0): faint ramp
    for (int y = 0; y < 16; ++y)
        for (int x = 0; x < 16; ++x) {
            img.at(16 + x, y) = (x + y) % 2 ? 250 : 5;
            img.at(32 + x, y) = static_cast<std::uint8_t>(100 + 3 * x);
        }
    const auto map = analyze_texture(img, BlockGrid::for_watermarking(img), 0.1, 0.3);
    CHECK(map.types.size() == 16);
    CHECK(map.types[0] == BlockType::Smooth);
    CHECK(map.types[1] == BlockType::Rough);
    CHECK(map.types[2] == BlockType::Normal);
    CHECK(map.norm_std[1] == 1.0);
    for (std::size_t i = 0; i < map.types.size(); ++i)
        CHECK(map.types[i] == categorize(map.norm_std[i], 0.1, 0.3));
}

TEST_CASE("watermarking grid needs multiples of 64")
{
    CHECK(BlockGrid::for_watermarking(512, 512).blocks_w == 32);
    CHECK(BlockGrid::for_watermarking(128, 192).blocks_h == 12);
    CHECK_THROWS_WITH(BlockGrid::for_watermarking(100, 128), doctest::Contains("multiple"));
    CHECK_THROWS(BlockGrid::for_watermarking(0, 64));
}

} // TEST_SUITE
