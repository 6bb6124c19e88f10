#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace gestrec {

/// 8-bit grayscale image, row-major storage.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> data;

    GrayImage() = default;
    GrayImage(int w, int h, std::uint8_t fill = 0);

    std::uint8_t at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }
    std::uint8_t& at(int x, int y) { return data[static_cast<std::size_t>(y) * width + x]; }
    std::size_t pixel_count() const { return data.size(); }

    bool operator==(const GrayImage&) const = default;
};

/// Binary mask, values exactly 0 or 1. Foreground (hand) is 1.
struct BinaryImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> data;

    BinaryImage() = default;
    BinaryImage(int w, int h, std::uint8_t fill = 0);

    std::uint8_t at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }
    std::uint8_t& at(int x, int y) { return data[static_cast<std::size_t>(y) * width + x]; }
    std::size_t pixel_count() const { return data.size(); }

    /// Number of 1-pixels.
    std::size_t foreground_count() const;

    bool operator==(const BinaryImage&) const = default;
};

/// Parses a PGM file (P2 ASCII or P5 binary, maxval <= 255). Header may
/// contain '#' comments. Throws ParseError naming the byte offset on
/// malformed input.
GrayImage decode_pgm(std::span<const std::uint8_t> bytes);

/// Canonical P5 encoding: "P5\n<w> <h>\n255\n" followed by the raw pixels.
/// Byte-exact deterministic, so encoded images can be compared and checksummed.
std::vector<std::uint8_t> encode_pgm(const GrayImage& img);

/// Maps mask values 1 -> fg and 0 -> bg. fg and bg must differ.
GrayImage binary_to_gray(const BinaryImage& img, std::uint8_t fg, std::uint8_t bg);

/// Nearest-neighbor resize; source index is floor(dst_index * src_dim / dst_dim).
/// Keeps the {0,1} alphabet intact.
BinaryImage resize_nearest(const BinaryImage& img, int out_w, int out_h);

GrayImage read_pgm(const std::filesystem::path& path);
void write_pgm(const std::filesystem::path& path, const GrayImage& img);

}  // namespace gestrec
