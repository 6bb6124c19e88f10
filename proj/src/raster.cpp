#include "gestrec/raster.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <string>

#include "gestrec/errors.hpp"

namespace gestrec {

namespace {

void check_dims(int w, int h, const char* what) {
    if (w < 1 || h < 1) {
        throw InvalidArgument(std::string(what) + ": dimensions must be positive, got " +
                              std::to_string(w) + "x" + std::to_string(h));
    }
}

// Cursor over the raw bytes; keeps the offset for error reporting.
struct Reader {
    std::span<const std::uint8_t> bytes;
    std::size_t pos = 0;

    bool eof() const { return pos >= bytes.size(); }
    std::uint8_t peek() const { return bytes[pos]; }

    [[noreturn]] void fail(const std::string& what) const { throw ParseError("pgm: " + what, pos); }

    // Skips whitespace and '#' comments (header context only).
    void skip_separators() {
        while (!eof()) {
            std::uint8_t c = peek();
            if (c == '#') {
                while (!eof() && peek() != '\n') ++pos;
            } else if (std::isspace(c)) {
                ++pos;
            } else {
                break;
            }
        }
    }

    long next_int(const char* field) {
        skip_separators();
        if (eof()) fail(std::string("missing ") + field);
        if (!std::isdigit(peek())) fail(std::string("expected digit for ") + field);
        long value = 0;
        while (!eof() && std::isdigit(peek())) {
            value = value * 10 + (peek() - '0');
            if (value > 1'000'000'000L) fail(std::string(field) + " out of range");
            ++pos;
        }
        return value;
    }
};

}  // namespace

GrayImage::GrayImage(int w, int h, std::uint8_t fill) : width(w), height(h) {
    check_dims(w, h, "GrayImage");
    data.assign(static_cast<std::size_t>(w) * h, fill);
}

BinaryImage::BinaryImage(int w, int h, std::uint8_t fill) : width(w), height(h) {
    check_dims(w, h, "BinaryImage");
    data.assign(static_cast<std::size_t>(w) * h, fill);
}

std::size_t BinaryImage::foreground_count() const {
    return static_cast<std::size_t>(std::count(data.begin(), data.end(), std::uint8_t{1}));
}

GrayImage decode_pgm(std::span<const std::uint8_t> bytes) {
    Reader r{bytes};
    if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '2' && bytes[1] != '5')) {
        r.fail("malformed magic number (want P2 or P5)");
    }
    const bool binary = bytes[1] == '5';
    r.pos = 2;

    long w = r.next_int("width");
    long h = r.next_int("height");
    if (w < 1 || h < 1) r.fail("dimensions must be positive");
    long maxval = r.next_int("maxval");
    if (maxval < 1 || maxval > 255) r.fail("maxval out of range [1,255]");

    GrayImage img(static_cast<int>(w), static_cast<int>(h));
    const std::size_t count = img.pixel_count();

    if (binary) {
        // Exactly one whitespace byte separates the header from the payload.
        if (r.eof() || !std::isspace(r.peek())) r.fail("expected whitespace before pixel data");
        ++r.pos;
        if (bytes.size() - r.pos < count) {
            r.pos = bytes.size();
            r.fail("truncated pixel data");
        }
        std::copy_n(bytes.begin() + static_cast<std::ptrdiff_t>(r.pos), count, img.data.begin());
        for (std::size_t i = 0; i < count; ++i) {
            if (img.data[i] > maxval) {
                r.pos += i;
                r.fail("pixel value exceeds maxval");
            }
        }
    } else {
        for (std::size_t i = 0; i < count; ++i) {
            long v = r.next_int("pixel value");
            if (v > maxval) r.fail("pixel value exceeds maxval");
            img.data[i] = static_cast<std::uint8_t>(v);
        }
    }
    return img;
}

std::vector<std::uint8_t> encode_pgm(const GrayImage& img) {
    check_dims(img.width, img.height, "encode_pgm");
    char header[32];
    int n = std::snprintf(header, sizeof header, "P5\n%d %d\n255\n", img.width, img.height);
    std::vector<std::uint8_t> out(header, header + n);
    out.insert(out.end(), img.data.begin(), img.data.end());
    return out;
}

GrayImage binary_to_gray(const BinaryImage& img, std::uint8_t fg, std::uint8_t bg) {
    if (fg == bg) throw InvalidArgument("binary_to_gray: fg and bg must differ");
    GrayImage out(img.width, img.height);
    std::transform(img.data.begin(), img.data.end(), out.data.begin(),
                   [fg, bg](std::uint8_t v) { return v ? fg : bg; });
    return out;
}

BinaryImage resize_nearest(const BinaryImage& img, int out_w, int out_h) {
    if (out_w < 1 || out_h < 1) throw InvalidArgument("resize_nearest: target dimensions must be positive");
    BinaryImage out(out_w, out_h);
    for (int y = 0; y < out_h; ++y) {
        const int sy = static_cast<int>(static_cast<std::int64_t>(y) * img.height / out_h);
        for (int x = 0; x < out_w; ++x) {
            const int sx = static_cast<int>(static_cast<std::int64_t>(x) * img.width / out_w);
            out.at(x, y) = img.at(sx, sy);
        }
    }
    return out;
}

GrayImage read_pgm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw LoadError("cannot open " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    return decode_pgm(bytes);
}

void write_pgm(const std::filesystem::path& path, const GrayImage& img) {
    auto bytes = encode_pgm(img);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw LoadError("cannot write " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw LoadError("short write to " + path.string());
}

}  // namespace gestrec
