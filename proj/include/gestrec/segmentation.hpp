#pragma once

#include <array>
#include <cstdint>

#include "gestrec/raster.hpp"

namespace gestrec {

/// 256-bin intensity histogram.
struct Histogram {
    std::array<std::uint64_t, 256> counts{};
    std::uint64_t total = 0;
};

struct ThresholdResult {
    int level = 0;                       // K*, the split level; foreground is strictly above
    double between_class_variance = 0.0; // sigma_B^2 at K*
};

Histogram histogram(const GrayImage& img);

/// Otsu's method: picks the level K* maximizing the between-class variance
/// sigma_B^2(k) = w0*w1*(mu0 - mu1)^2 with class 0 = levels <= k and
/// class 1 = levels > k. Ties resolve to the smallest k. A histogram with a
/// single occupied bin v returns {v, 0}, which binarizes to an all-zero mask.
ThresholdResult otsu_threshold(const Histogram& h);

/// pixel > level -> 1, pixel <= level -> 0. level=255 means "nothing is hand".
BinaryImage binarize(const GrayImage& img, int level);

/// Convenience: otsu_threshold(histogram(img)).level.
int otsu_level(const GrayImage& img);

}  // namespace gestrec
