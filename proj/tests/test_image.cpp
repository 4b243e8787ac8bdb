#include "oracles/oracle_values.hpp"
#include "support.hpp"

#include "sfw/metrics.hpp"

#include <doctest.h>

#include <cmath>
#include <fstream>
#include <string>

using namespace sfw;

namespace {

std::vector<std::uint8_t> bytes_of(const std::string& s)
{
    return {s.begin(), s.end()};
}

GrayImage filled(int w, int h, std::uint8_t v)
{
    return GrayImage(w, h, v);
}

} // namespace

TEST_SUITE("core-image") {

TEST_CASE("decode a 2x2 P5 file")
{
    auto bytes = bytes_of("P5\n2 2\n255\n");
    bytes.insert(bytes.end(), {0, 255, 128, 64});
    const GrayImage img = decode_pgm(bytes);
    CHECK(img.width() == 2);
    CHECK(img.height() == 2);
    CHECK(img.at(0, 0) == 0);
    CHECK(img.at(1, 0) == 255);
    CHECK(img.at(0, 1) == 128);
    CHECK(img.at(1, 1) == 64);
}

TEST_CASE("encode writes a three line header and raw bytes")
{
    const auto bytes = encode_pgm(GrayImage(1, 1, std::vector<std::uint8_t>{42}));
    auto expected = bytes_of("P5\n1 1\n255\n");
    expected.push_back(42);
    CHECK(bytes == expected);
}

TEST_CASE("header comments are accepted")
{
    auto bytes = bytes_of("P5\n# made by hand\n1 # w\n1\n255\n");
    bytes.push_back(7);
    CHECK(decode_pgm(bytes).at(0, 0) == 7);
}

TEST_CASE("malformed files are rejected")
{
    CHECK_THROWS_WITH_AS(decode_pgm(bytes_of("P2\n1 1\n255\n7\n")), doctest::Contains("unsupported magic"),
                         FormatError);
    auto wide = bytes_of("P5\n1 1\n65535\n");
    wide.insert(wide.end(), {0, 0});
    CHECK_THROWS_AS(decode_pgm(wide), FormatError);
    auto trunc = bytes_of("P5\n2 2\n255\n");
    trunc.insert(trunc.end(), {1, 2, 3});
    CHECK_THROWS_WITH_AS(decode_pgm(trunc), doctest::Contains("truncated"), FormatError);
    CHECK_THROWS_AS(decode_pgm(bytes_of("P5\n2\n")), FormatError);
    CHECK_THROWS_AS(decode_pgm(bytes_of("")), FormatError);
}

TEST_CASE("512x512 random image round trips byte-exactly through a file")
{
    const GrayImage img = testing::random_image(512, 512, 11);
    const auto path = std::filesystem::temp_directory_path() / "sfw_roundtrip.pgm";
    save_pgm(img, path);
    CHECK(load_pgm(path) == img);
    std::ifstream in(path, std::ios::binary);
    std::vector<std::uint8_t> raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(raw == encode_pgm(img));
    std::filesystem::remove(path);
}

TEST_CASE("round trip holds for assorted sizes")
{
    for (int w : {1, 3, 17, 64})
        for (int h : {1, 2, 31}) {
            const GrayImage img = testing::random_image(w, h, static_cast<unsigned>(w * 100 + h));
            CHECK(decode_pgm(encode_pgm(img)) == img);
        }
}

TEST_CASE("save into a missing directory fails")
{
    CHECK_THROWS(save_pgm(filled(2, 2, 0), "/nonexistent-dir/x/y.pgm"));
}

TEST_CASE("block masks as images")
{
    BlockMask m(4, 2);
    m.set(1, 0, true);
    m.set(3, 1, true);
    const GrayImage img = mask_to_image(m);
    CHECK(img.width() == 4);
    CHECK(img.at(1, 0) == 255);
    CHECK(img.at(0, 0) == 0);

    const auto path = std::filesystem::temp_directory_path() / "sfw_mask.pgm";
    save_pgm(img, path);
    CHECK(load_block_mask(path, 4, 2) == m);

    // the detect debug layer (128) counts as clear
    GrayImage dbg = img;
    dbg.at(2, 1) = 128;
    save_pgm(dbg, path);
    CHECK(load_block_mask(path, 4, 2) == m);

    GrayImage full(64, 32, 0);
    for (int y = 0; y < 16; ++y)
        for (int x = 16; x < 32; ++x)
            full.at(x, y) = 255;
    for (int y = 16; y < 32; ++y)
        for (int x = 48; x < 64; ++x)
            full.at(x, y) = 255;
    save_pgm(full, path);
    CHECK(load_block_mask(path, 4, 2) == m);
    CHECK_THROWS_AS(load_block_mask(path, 5, 2), FormatError);
    std::filesystem::remove(path);
}

TEST_CASE("psnr closed form and identical marker")
{
    const GrayImage a = filled(8, 8, 100), b = filled(8, 8, 110);
    CHECK(psnr(a, b, PsnrPeak::Fixed255) == doctest::Approx(10.0 * std::log10(255.0 * 255.0 / 100.0)));
    CHECK(psnr(a, b, PsnrPeak::Fixed255) == doctest::Approx(28.13).epsilon(0.001));
    // the default peak is the reference image's maximum
    CHECK(psnr(a, b) == doctest::Approx(10.0 * std::log10(100.0 * 100.0 / 100.0)));
    CHECK(std::isinf(psnr(a, a)));
    CHECK(psnr(a, a) == kIdenticalDb);
    CHECK_THROWS(psnr(a, filled(8, 9, 0)));
}

TEST_CASE("psnr with a full-range reference uses 255")
{
    GrayImage a = testing::random_image(32, 32, 3);
    a.at(0, 0) = 255;
    GrayImage b = a;
    b.at(5, 5) ^= 0x10;
    CHECK(psnr(a, b) == doctest::Approx(psnr(a, b, PsnrPeak::Fixed255)));
}

TEST_CASE("psnr is symmetric when both images share the peak")
{
    GrayImage a = testing::random_image(64, 64, 5), b = testing::random_image(64, 64, 6);
    a.at(0, 0) = 255;
    b.at(0, 0) = 255;
    CHECK(psnr(a, b) == doctest::Approx(psnr(b, a)));
    CHECK(psnr(a, b, PsnrPeak::Fixed255) == doctest::Approx(psnr(b, a, PsnrPeak::Fixed255)));
}

TEST_CASE("psnr decreases as uniform noise amplitude grows")
{
    const GrayImage base = filled(64, 64, 128);
    std::mt19937 rng(9);
    double last = kIdenticalDb;
    for (int k = 1; k <= 40; k += 3) {
        GrayImage n = base;
        for (auto& p : n.pixels())
            p = static_cast<std::uint8_t>(128 + ((rng() & 1) ? k : -k));
        const double v = psnr(base, n, PsnrPeak::Fixed255);
        CHECK(v < last);
        last = v;
    }
}

TEST_CASE("region psnr")
{
    const GrayImage a = testing::random_image(64, 64, 1);
    GrayImage b = a;
    for (int y = 16; y < 32; ++y)
        for (int x = 0; x < 16; ++x)
            b.at(x, y) = static_cast<std::uint8_t>(b.at(x, y) ^ 1);

    BlockMask clean(4, 4);
    clean.set(3, 3, true);
    CHECK(std::isinf(region_psnr(a, b, clean)));

    const BlockMask all(4, 4, true);
    CHECK(region_psnr(a, b, all) == doctest::Approx(psnr(a, b)));

    BlockMask one(4, 4);
    one.set(0, 1, true);
    // every pixel of the block is off by one
    CHECK(region_psnr(a, b, one, PsnrPeak::Fixed255) == doctest::Approx(10.0 * std::log10(255.0 * 255.0)));

    CHECK_THROWS(region_psnr(a, b, BlockMask(4, 4)));
}

TEST_CASE("ssim matches the scikit-image reference")
{
    const GrayImage a = testing::pattern_image(64, 48);
    const GrayImage b = testing::perturbed_image(64, 48);
    const GrayImage s = testing::smooth_image(64, 48);
    GrayImage shifted = s;
    for (auto& p : shifted.pixels())
        p = static_cast<std::uint8_t>(std::min(255, p + 9));
    GrayImage inverted = a;
    for (auto& p : inverted.pixels())
        p = static_cast<std::uint8_t>(255 - p);

    CHECK(ssim(a, b) == doctest::Approx(oracle::kSsimPatternPerturbed).epsilon(1e-9));
    CHECK(ssim(s, a) == doctest::Approx(oracle::kSsimSmoothPattern).epsilon(1e-7));
    CHECK(ssim(s, shifted) == doctest::Approx(oracle::kSsimSmoothShifted).epsilon(1e-9));
    // the reference value is negative; the library clamps to [0,1]
    CHECK(oracle::kSsimPatternInverted < 0.2);
    CHECK(ssim(a, inverted) == doctest::Approx(std::max(0.0, oracle::kSsimPatternInverted)));
}

TEST_CASE("ssim bounds and errors")
{
    const GrayImage a = testing::random_image(40, 30, 2);
    CHECK(ssim(a, a) == doctest::Approx(1.0));
    for (unsigned s = 0; s < 10; ++s) {
        const double v = ssim(a, testing::random_image(40, 30, 100 + s));
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }
    CHECK_THROWS(ssim(a, testing::random_image(30, 40, 2)));
    CHECK_THROWS(ssim(testing::random_image(10, 30, 1), testing::random_image(10, 30, 1)));
    CHECK(ssim(testing::random_image(11, 11, 1), testing::random_image(11, 11, 1)) == doctest::Approx(1.0));
}

TEST_CASE("fr/fa")
{
    BlockMask truth(4, 4);
    truth.set(0, 0, true);
    truth.set(1, 0, true);

    const auto perfect = fr_fa(truth, truth);
    CHECK(perfect.false_rejection == 0.0);
    CHECK(perfect.false_acceptance == 0.0);

    const auto all = fr_fa(BlockMask(4, 4, true), truth);
    CHECK(all.false_rejection == 0.0);
    CHECK(all.false_acceptance == 1.0);

    BlockMask inverse = truth;
    inverse.flags.flip();
    const auto inv = fr_fa(inverse, truth);
    CHECK(inv.false_rejection == 1.0);
    CHECK(inv.false_acceptance == 1.0);

    BlockMask half(4, 4);
    half.set(0, 0, true);
    half.set(3, 3, true);
    const auto h = fr_fa(half, truth);
    CHECK(h.false_rejection == doctest::Approx(0.5));
    CHECK(h.false_acceptance == doctest::Approx(1.0 / 14.0));

    CHECK_THROWS(fr_fa(truth, BlockMask(4, 4)));
    CHECK_THROWS(fr_fa(truth, BlockMask(4, 4, true)));
    CHECK_THROWS(fr_fa(BlockMask(2, 2), truth));
}

} // TEST_SUITE
