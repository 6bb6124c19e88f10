#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "gestrec/raster.hpp"

namespace gestrec {

/// Binary probe shape for erosion and dilation. Dimensions are odd and the
/// origin is the center cell. At least one cell must be set.
class StructuringElement {
public:
    StructuringElement(int width, int height, std::vector<std::uint8_t> mask);

    /// Full w x h square of ones (the default pipeline shape is square(3)).
    static StructuringElement square(int side);

    int width() const { return width_; }
    int height() const { return height_; }
    int origin_x() const { return width_ / 2; }
    int origin_y() const { return height_ / 2; }
    bool probe(int i, int j) const { return mask_[static_cast<std::size_t>(j) * width_ + i] != 0; }

    /// Active cell offsets relative to the origin.
    const std::vector<std::pair<int, int>>& offsets() const { return offsets_; }

private:
    int width_;
    int height_;
    std::vector<std::uint8_t> mask_;
    std::vector<std::pair<int, int>> offsets_;
};

// Outside-frame pixels are background (0) for both operators. dilate uses
// the reflected-SE convention; with a symmetric SE reflection is identity.
BinaryImage erode(const BinaryImage& img, const StructuringElement& se);
BinaryImage dilate(const BinaryImage& img, const StructuringElement& se);

BinaryImage open(const BinaryImage& img, const StructuringElement& se);
BinaryImage close(const BinaryImage& img, const StructuringElement& se);

/// Keeps only the largest 8-connected foreground component; ties go to the
/// component whose first pixel in row-major order comes first. Empty input
/// stays empty.
BinaryImage largest_component(const BinaryImage& img);

/// largest_component(close(open(img, se), se)): specks removed, holes
/// filled, one silhouette left.
BinaryImage denoise_pipeline(const BinaryImage& img, const StructuringElement& se);

}  // namespace gestrec
