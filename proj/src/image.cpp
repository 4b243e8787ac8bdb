#include "sfw/image.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iterator>
#include <string>

namespace sfw {

GrayImage::GrayImage(int width, int height, std::uint8_t fill)
    : width_(width), height_(height)
{
    if (width < 0 || height < 0)
        throw std::invalid_argument("image dimensions must be non-negative");
    data_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
}

GrayImage::GrayImage(int width, int height, std::vector<std::uint8_t> data)
    : width_(width), height_(height), data_(std::move(data))
{
    if (width < 0 || height < 0)
        throw std::invalid_argument("image dimensions must be non-negative");
    if (data_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height))
        throw std::invalid_argument("image data length does not match width x height");
}

std::size_t BlockMask::count() const noexcept
{
    return static_cast<std::size_t>(std::count(flags.begin(), flags.end(), true));
}

namespace {

class HeaderReader {
public:
    explicit HeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) { }

    void skip_space_and_comments()
    {
        while (pos_ < bytes_.size()) {
            const auto c = bytes_[pos_];
            if (c == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r')
                    ++pos_;
            } else if (std::isspace(c)) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    long read_uint(const char* what)
    {
        skip_space_and_comments();
        long value = 0;
        std::size_t digits = 0;
        while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
            value = value * 10 + (bytes_[pos_] - '0');
            if (value > 1'000'000)
                throw FormatError(std::string("PGM header: ") + what + " too large");
            ++pos_;
            ++digits;
        }
        if (digits == 0)
            throw FormatError(std::string("PGM header: missing ") + what);
        return value;
    }

    // Exactly one whitespace byte separates maxval from the raster.
    void consume_single_space()
    {
        if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_]))
            throw FormatError("PGM header: expected whitespace before raster");
        ++pos_;
    }

    std::size_t position() const noexcept { return pos_; }
    void advance(std::size_t n) noexcept { pos_ += n; }

private:
    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

} // namespace

GrayImage decode_pgm(std::span<const std::uint8_t> bytes)
{
    if (bytes.size() < 2 || bytes[0] != 'P')
        throw FormatError("not a PNM file");
    if (bytes[1] != '5')
        throw FormatError(std::string("unsupported magic P") + static_cast<char>(bytes[1]));

    HeaderReader reader(bytes);
    reader.advance(2);
    const long width = reader.read_uint("width");
    const long height = reader.read_uint("height");
    const long maxval = reader.read_uint("maxval");
    if (maxval != 255)
        throw FormatError("unsupported maxval " + std::to_string(maxval) + " (only 255)");
    reader.consume_single_space();

    const std::size_t count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    const std::size_t start = reader.position();
    if (bytes.size() - start < count)
        throw FormatError("truncated PGM raster");

    std::vector<std::uint8_t> data(bytes.begin() + static_cast<std::ptrdiff_t>(start),
                                   bytes.begin() + static_cast<std::ptrdiff_t>(start + count));
    return GrayImage(static_cast<int>(width), static_cast<int>(height), std::move(data));
}

std::vector<std::uint8_t> encode_pgm(const GrayImage& img)
{
    const std::string header =
        "P5\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n255\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.insert(out.end(), img.pixels().begin(), img.pixels().end());
    return out;
}

GrayImage load_pgm(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open '" + path.string() + "'");
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    try {
        return decode_pgm(bytes);
    } catch (const FormatError& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

void save_pgm(const GrayImage& img, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot write '" + path.string() + "'");
    const auto bytes = encode_pgm(img);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out)
        throw std::runtime_error("write failed for '" + path.string() + "'");
}

GrayImage mask_to_image(const BlockMask& mask)
{
    GrayImage img(mask.blocks_w, mask.blocks_h);
    for (int by = 0; by < mask.blocks_h; ++by)
        for (int bx = 0; bx < mask.blocks_w; ++bx)
            img.at(bx, by) = mask.at(bx, by) ? 255 : 0;
    return img;
}

BlockMask load_block_mask(const std::filesystem::path& path, int blocks_w, int blocks_h)
{
    const GrayImage img = load_pgm(path);
    BlockMask mask(blocks_w, blocks_h);
    if (img.width() == blocks_w && img.height() == blocks_h) {
        for (int by = 0; by < blocks_h; ++by)
            for (int bx = 0; bx < blocks_w; ++bx)
                mask.set(bx, by, img.at(bx, by) > 128);
        return mask;
    }
    if (img.width() == blocks_w * 16 && img.height() == blocks_h * 16) {
        for (int by = 0; by < blocks_h; ++by) {
            for (int bx = 0; bx < blocks_w; ++bx) {
                int sum = 0;
                for (int y = 0; y < 16; ++y)
                    for (int x = 0; x < 16; ++x)
                        sum += img.at(bx * 16 + x, by * 16 + y);
                mask.set(bx, by, sum > 128 * 256);
            }
        }
        return mask;
    }
    throw FormatError(path.string() + ": mask size matches neither the block grid nor the image");
}

} // namespace sfw
