#pragma once

#include <vector>

#include "gestrec/raster.hpp"

namespace gestrec {

/// Real-valued grid used by the correlation kernels. Binary silhouettes are
/// lifted to {0.0, 1.0}, gray images to [0, 255].
struct RealGrid {
    int width = 0;
    int height = 0;
    std::vector<double> data;

    RealGrid() = default;
    RealGrid(int w, int h, double fill = 0.0);

    double at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }
    double& at(int x, int y) { return data[static_cast<std::size_t>(y) * width + x]; }
    const double* row(int y) const { return data.data() + static_cast<std::size_t>(y) * width; }

    bool operator==(const RealGrid&) const = default;
};

RealGrid to_real(const BinaryImage& img);
RealGrid to_real(const GrayImage& img);

/// Correlation template with its precomputed statistics: mean, the centered
/// values T - mean, and the centered norm sqrt(sum((T - mean)^2)).
class Kernel {
public:
    explicit Kernel(RealGrid values);

    int width() const { return values_.width; }
    int height() const { return values_.height; }
    const RealGrid& values() const { return values_; }
    double mean() const { return mean_; }
    double centered_norm() const { return centered_norm_; }

    const std::vector<double>& centered() const { return centered_; }
    double centered_norm_sq() const { return centered_norm_sq_; }
    /// Floating-point residue of sum(centered); exactly zero in real
    /// arithmetic, kept to cancel rounding drift in the fast path.
    double centered_residue() const { return centered_residue_; }

private:
    RealGrid values_;
    double mean_ = 0.0;
    double centered_norm_ = 0.0;
    double centered_norm_sq_ = 0.0;
    double centered_residue_ = 0.0;
    std::vector<double> centered_;
};

Kernel make_kernel(RealGrid values);

/// Map of correlation coefficients; width = m - p + 1, height = n - q + 1.
struct CorrelationMap {
    int width = 0;
    int height = 0;
    std::vector<double> data;

    CorrelationMap() = default;
    CorrelationMap(int w, int h);

    double at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }
    double& at(int x, int y) { return data[static_cast<std::size_t>(y) * width + x]; }

    bool operator==(const CorrelationMap&) const = default;
};

struct MatchPoint {
    int x = 0;
    int y = 0;
    double gamma = 0.0;
};

/// Direct evaluation of the correlation coefficient
///   gamma(x,y) = sum(dI*dT) / sqrt(sum(dI^2) * sum(dT^2))
/// with dI taken against the local window mean. Serial, window by window;
/// the equivalence baseline for the fast path. Flat windows and flat
/// kernels yield gamma = 0.
CorrelationMap ncc_map_reference(const RealGrid& image, const Kernel& kernel);

/// Same map via two summed-area tables (window sums and sums of squares):
/// O(1) window statistics, O(p*q) numerator against the centered kernel.
/// Rows are computed in parallel; per-entry results are identical across
/// thread counts and match the reference within 1e-9.
CorrelationMap ncc_map_fast(const RealGrid& image, const Kernel& kernel);

/// Maximum map entry; ties go to the smallest row-major index.
MatchPoint match_point(const CorrelationMap& map);

/// Centered crop of floor(width * fraction) x floor(height * fraction) pixels.
RealGrid central_crop(const RealGrid& grid, double fraction);

/// Auto-correlation surface of a template: the template correlated against
/// its own central crop. Computed with the fast kernel (identical to the
/// reference composition within its 1e-9 equivalence bound).
CorrelationMap autocorrelation_map(const RealGrid& template_img, double kernel_fraction);

}  // namespace gestrec
