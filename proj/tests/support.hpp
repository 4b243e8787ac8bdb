#pragma once

#include "sfw/image.hpp"

#include <algorithm>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

namespace testing {

inline std::filesystem::path corpus_dir()
{
    return SFW_CORPUS_DIR;
}

inline std::vector<std::filesystem::path> corpus_paths()
{
    std::vector<std::filesystem::path> out;
    for (const auto& e : std::filesystem::directory_iterator(corpus_dir()))
        if (e.path().extension() == ".pgm")
            out.push_back(e.path());
    std::sort(out.begin(), out.end());
    return out;
}

inline sfw::GrayImage corpus_image(const std::string& name)
{
    return sfw::load_pgm(corpus_dir() / (name + ".pgm"));
}

inline sfw::GrayImage random_image(int w, int h, unsigned seed)
{
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> d(0, 255);
    sfw::GrayImage img(w, h);
    for (auto& p : img.pixels())
        p = static_cast<std::uint8_t>(d(rng));
    return img;
}

// Closed-form images shared with tests/oracles/gen_oracles.py.
inline sfw::GrayImage pattern_image(int w, int h)
{
    sfw::GrayImage img(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            img.at(x, y) = static_cast<std::uint8_t>((x * x + 3 * x * y + 7 * y) % 256);
    return img;
}

inline sfw::GrayImage perturbed_image(int w, int h)
{
    sfw::GrayImage img = pattern_image(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            img.at(x, y) = static_cast<std::uint8_t>(std::clamp(img.at(x, y) + (x * 31 + y * 17) % 41 - 20, 0, 255));
    return img;
}

inline sfw::GrayImage smooth_image(int w, int h)
{
    sfw::GrayImage img(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            img.at(x, y) = static_cast<std::uint8_t>((x * 2 + y * 3) % 256);
    return img;
}

inline std::size_t count_diff(const sfw::GrayImage& a, const sfw::GrayImage& b)
{
    std::size_t n = 0;
    for (std::size_t i = 0; i < a.pixels().size(); ++i)
        n += a.pixels()[i] != b.pixels()[i] ? 1 : 0;
    return n;
}

} // namespace testing
