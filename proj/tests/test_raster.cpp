#include <doctest.h>

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "gestrec/errors.hpp"
#include "gestrec/raster.hpp"
#include "gestrec/rng.hpp"

using namespace gestrec;

namespace {

std::vector<std::uint8_t> bytes_of(const std::string& s) {
    return std::vector<std::uint8_t>(s.begin(), s.end());
}

}  // namespace

TEST_CASE("image constructors reject degenerate dimensions") {
    CHECK_THROWS_AS(GrayImage(0, 4), InvalidArgument);
    CHECK_THROWS_AS(GrayImage(4, -1), InvalidArgument);
    CHECK_THROWS_AS(BinaryImage(0, 0), InvalidArgument);
    GrayImage g(3, 2, 7);
    CHECK(g.pixel_count() == 6);
    CHECK(g.at(2, 1) == 7);
}

TEST_CASE("encode_pgm emits the canonical 12-byte header for a 1x1 image") {
    GrayImage img(1, 1);
    img.at(0, 0) = 7;
    const auto out = encode_pgm(img);
    const std::string header = "P5\n1 1\n255\n";
    REQUIRE(out.size() == header.size() + 1);
    CHECK(std::string(out.begin(), out.end() - 1) == header);
    CHECK(out.back() == 0x07);
}

TEST_CASE("P5 encode/decode round trip preserves every pixel") {
    SplitMix64 rng(11);
    for (int t = 0; t < 10; ++t) {
        GrayImage img(1 + int(rng.next() % 40), 1 + int(rng.next() % 40));
        for (auto& v : img.data) v = static_cast<std::uint8_t>(rng.next() & 0xff);
        const GrayImage back = decode_pgm(encode_pgm(img));
        CHECK(back == img);
    }
}

TEST_CASE("P2 parsing handles comments and arbitrary whitespace") {
    const auto data = bytes_of("P2 # ascii\n# full-line comment\n 3 2\t255\n10 20 30\n40  50\t60\n");
    const GrayImage img = decode_pgm(data);
    REQUIRE(img.width == 3);
    REQUIRE(img.height == 2);
    CHECK(img.at(0, 0) == 10);
    CHECK(img.at(2, 0) == 30);
    CHECK(img.at(1, 1) == 50);
    CHECK(img.at(2, 1) == 60);
}

TEST_CASE("maxval below 255 still decodes but bounds pixel values") {
    const auto ok = bytes_of("P2\n2 1\n99\n0 99\n");
    CHECK(decode_pgm(ok).at(1, 0) == 99);
    const auto over = bytes_of("P2\n2 1\n99\n0 100\n");
    CHECK_THROWS_AS(decode_pgm(over), ParseError);
}

TEST_CASE("malformed inputs raise ParseError with a byte offset") {
    SUBCASE("bad magic") {
        try {
            decode_pgm(bytes_of("Q5\n1 1\n255\nx"));
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.offset() == 0);
            CHECK(std::string(e.what()).find("at byte 0") != std::string::npos);
        }
    }
    SUBCASE("truncated P5 payload") {
        const auto data = bytes_of("P5\n2 2\n255\nab");  // 2 of 4 pixels
        try {
            decode_pgm(data);
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.offset() == data.size());
        }
    }
    SUBCASE("missing header fields") {
        CHECK_THROWS_AS(decode_pgm(bytes_of("P2\n3\n")), ParseError);
        CHECK_THROWS_AS(decode_pgm(bytes_of("P5\n")), ParseError);
        CHECK_THROWS_AS(decode_pgm(bytes_of("")), ParseError);
    }
    SUBCASE("non-numeric dimension") {
        CHECK_THROWS_AS(decode_pgm(bytes_of("P2\nx 2\n255\n0 0\n")), ParseError);
    }
    SUBCASE("maxval out of range") {
        CHECK_THROWS_AS(decode_pgm(bytes_of("P2\n1 1\n999\n0\n")), ParseError);
        CHECK_THROWS_AS(decode_pgm(bytes_of("P2\n1 1\n0\n0\n")), ParseError);
    }
    SUBCASE("P5 pixel above maxval") {
        auto data = bytes_of("P5\n1 1\n99\n");
        data.push_back(0xff);
        CHECK_THROWS_AS(decode_pgm(data), ParseError);
    }
}

TEST_CASE("binary_to_gray maps the two mask values and rejects fg == bg") {
    BinaryImage mask(2, 1);
    mask.at(0, 0) = 1;
    const GrayImage g = binary_to_gray(mask, 200, 30);
    CHECK(g.at(0, 0) == 200);
    CHECK(g.at(1, 0) == 30);
    CHECK_THROWS_AS(binary_to_gray(mask, 5, 5), InvalidArgument);
}

TEST_CASE("resize_nearest uses floor source indexing") {
    // Downscale 4 -> 2 picks source columns floor(0*4/2)=0 and floor(1*4/2)=2.
    BinaryImage row4(4, 1);
    row4.at(1, 0) = 1;
    row4.at(2, 0) = 1;
    const BinaryImage down = resize_nearest(row4, 2, 1);
    CHECK(down.at(0, 0) == 0);
    CHECK(down.at(1, 0) == 1);

    // Upscale 2 -> 5 picks floor(x*2/5) = 0,0,0,1,1.
    BinaryImage row2(2, 1);
    row2.at(1, 0) = 1;
    const BinaryImage up = resize_nearest(row2, 5, 1);
    for (int x = 0; x < 5; ++x) CHECK(up.at(x, 0) == (x >= 3 ? 1 : 0));

    CHECK_THROWS_AS(resize_nearest(row2, 0, 3), InvalidArgument);
}

TEST_CASE("resize_nearest keeps the {0,1} alphabet and identity size") {
    SplitMix64 rng(5);
    BinaryImage img(17, 9);
    for (auto& v : img.data) v = rng.next() & 1;
    CHECK(resize_nearest(img, 17, 9) == img);
    const BinaryImage out = resize_nearest(img, 40, 3);
    for (auto v : out.data) CHECK((v == 0 || v == 1));
}

TEST_CASE("file round trip and missing-file error") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "gestrec_raster_test";
    fs::create_directories(dir);
    GrayImage img(5, 4);
    for (std::size_t i = 0; i < img.data.size(); ++i) img.data[i] = static_cast<std::uint8_t>(7 * i);
    write_pgm(dir / "a.pgm", img);
    CHECK(read_pgm(dir / "a.pgm") == img);
    CHECK_THROWS_AS(read_pgm(dir / "nope.pgm"), LoadError);
    fs::remove_all(dir);
}

TEST_CASE("foreground_count counts only ones") {
    BinaryImage img(3, 3);
    img.at(0, 0) = 1;
    img.at(2, 2) = 1;
    CHECK(img.foreground_count() == 2);
}
