#include "gestrec/morphology.hpp"

#include <algorithm>
#include <string>

#include "gestrec/errors.hpp"

namespace gestrec {

StructuringElement::StructuringElement(int width, int height, std::vector<std::uint8_t> mask)
    : width_(width), height_(height), mask_(std::move(mask)) {
    if (width < 1 || height < 1 || width % 2 == 0 || height % 2 == 0) {
        throw InvalidArgument("StructuringElement: dimensions must be odd and positive, got " +
                              std::to_string(width) + "x" + std::to_string(height));
    }
    if (mask_.size() != static_cast<std::size_t>(width) * height) {
        throw InvalidArgument("StructuringElement: mask size does not match dimensions");
    }
    for (int j = 0; j < height_; ++j) {
        for (int i = 0; i < width_; ++i) {
            if (probe(i, j)) offsets_.emplace_back(i - origin_x(), j - origin_y());
        }
    }
    if (offsets_.empty()) throw InvalidArgument("StructuringElement: mask has no active cells");
}

StructuringElement StructuringElement::square(int side) {
    return StructuringElement(side, side, std::vector<std::uint8_t>(static_cast<std::size_t>(side) * side, 1));
}

BinaryImage erode(const BinaryImage& img, const StructuringElement& se) {
    BinaryImage out(img.width, img.height);
    const auto& offs = se.offsets();
#pragma omp parallel for schedule(static)
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            std::uint8_t v = 1;
            for (const auto& [dx, dy] : offs) {
                const int sx = x + dx;
                const int sy = y + dy;
                if (sx < 0 || sx >= img.width || sy < 0 || sy >= img.height || !img.at(sx, sy)) {
                    v = 0;
                    break;
                }
            }
            out.at(x, y) = v;
        }
    }
    return out;
}

BinaryImage dilate(const BinaryImage& img, const StructuringElement& se) {
    BinaryImage out(img.width, img.height);
    const auto& offs = se.offsets();
#pragma omp parallel for schedule(static)
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            std::uint8_t v = 0;
            for (const auto& [dx, dy] : offs) {
                // Reflected SE: the hit test looks backwards along the offset.
                const int sx = x - dx;
                const int sy = y - dy;
                if (sx >= 0 && sx < img.width && sy >= 0 && sy < img.height && img.at(sx, sy)) {
                    v = 1;
                    break;
                }
            }
            out.at(x, y) = v;
        }
    }
    return out;
}

BinaryImage open(const BinaryImage& img, const StructuringElement& se) {
    return dilate(erode(img, se), se);
}

BinaryImage close(const BinaryImage& img, const StructuringElement& se) {
    return erode(dilate(img, se), se);
}

BinaryImage largest_component(const BinaryImage& img) {
    const int w = img.width;
    const int h = img.height;
    std::vector<std::int32_t> label(img.pixel_count(), -1);
    std::vector<std::size_t> stack;

    std::int32_t next_label = 0;
    std::size_t best_size = 0;
    std::int32_t best_label = -1;

    // Row-major scan; the first pixel of each component is its topmost,
    // leftmost one, so "first component found wins ties" is exactly the
    // smallest top-left-most tie rule.
    for (std::size_t start = 0; start < img.pixel_count(); ++start) {
        if (!img.data[start] || label[start] != -1) continue;
        const std::int32_t cur = next_label++;
        std::size_t size = 0;
        stack.push_back(start);
        label[start] = cur;
        while (!stack.empty()) {
            const std::size_t p = stack.back();
            stack.pop_back();
            ++size;
            const int px = static_cast<int>(p % w);
            const int py = static_cast<int>(p / w);
            for (int dy = -1; dy <= 1; ++dy) {
                for (int dx = -1; dx <= 1; ++dx) {
                    if (dx == 0 && dy == 0) continue;
                    const int nx = px + dx;
                    const int ny = py + dy;
                    if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
                    const std::size_t q = static_cast<std::size_t>(ny) * w + nx;
                    if (img.data[q] && label[q] == -1) {
                        label[q] = cur;
                        stack.push_back(q);
                    }
                }
            }
        }
        if (size > best_size) {
            best_size = size;
            best_label = cur;
        }
    }

    BinaryImage out(w, h);
    if (best_label >= 0) {
        for (std::size_t i = 0; i < img.pixel_count(); ++i) {
            out.data[i] = label[i] == best_label ? 1 : 0;
        }
    }
    return out;
}

BinaryImage denoise_pipeline(const BinaryImage& img, const StructuringElement& se) {
    return largest_component(close(open(img, se), se));
}

}  // namespace gestrec
