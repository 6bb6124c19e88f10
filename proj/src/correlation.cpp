#include "gestrec/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gestrec/errors.hpp"

namespace gestrec {

namespace {

void require_fits(const RealGrid& image, const Kernel& kernel) {
    if (kernel.width() > image.width || kernel.height() > image.height) {
        throw InvalidArgument("ncc: kernel " + std::to_string(kernel.width()) + "x" +
                              std::to_string(kernel.height()) + " larger than image " +
                              std::to_string(image.width) + "x" + std::to_string(image.height));
    }
}

}  // namespace

RealGrid::RealGrid(int w, int h, double fill) : width(w), height(h) {
    if (w < 1 || h < 1) throw InvalidArgument("RealGrid: dimensions must be positive");
    data.assign(static_cast<std::size_t>(w) * h, fill);
}

RealGrid to_real(const BinaryImage& img) {
    RealGrid out(img.width, img.height);
    std::transform(img.data.begin(), img.data.end(), out.data.begin(),
                   [](std::uint8_t v) { return v ? 1.0 : 0.0; });
    return out;
}

RealGrid to_real(const GrayImage& img) {
    RealGrid out(img.width, img.height);
    std::transform(img.data.begin(), img.data.end(), out.data.begin(),
                   [](std::uint8_t v) { return static_cast<double>(v); });
    return out;
}

Kernel::Kernel(RealGrid values) : values_(std::move(values)) {
    if (values_.data.empty()) throw InvalidArgument("Kernel: empty grid");
    double sum = 0.0;
    for (double v : values_.data) sum += v;
    mean_ = sum / static_cast<double>(values_.data.size());

    centered_.resize(values_.data.size());
    double norm_sq = 0.0;
    double residue = 0.0;
    for (std::size_t i = 0; i < values_.data.size(); ++i) {
        const double d = values_.data[i] - mean_;
        centered_[i] = d;
        // This accumulation must be bitwise identical to the reference
        // window statistics so perfectly (anti)correlated cases stay exact;
        // the build compiles this file with -ffp-contract=off to keep the
        // compiler from fusing the multiply-adds differently per loop.
        norm_sq += d * d;
        residue += d;
    }
    centered_norm_sq_ = norm_sq;
    centered_norm_ = std::sqrt(norm_sq);
    centered_residue_ = residue;
}

Kernel make_kernel(RealGrid values) { return Kernel(std::move(values)); }

CorrelationMap::CorrelationMap(int w, int h) : width(w), height(h) {
    if (w < 1 || h < 1) throw InvalidArgument("CorrelationMap: dimensions must be positive");
    data.assign(static_cast<std::size_t>(w) * h, 0.0);
}

CorrelationMap ncc_map_reference(const RealGrid& image, const Kernel& kernel) {
    require_fits(image, kernel);
    const int p = kernel.width();
    const int q = kernel.height();
    const int mw = image.width - p + 1;
    const int mh = image.height - q + 1;
    CorrelationMap map(mw, mh);

    const double st2 = kernel.centered_norm_sq();
    const RealGrid& tmpl = kernel.values();
    const double tbar = kernel.mean();

    for (int y = 0; y < mh; ++y) {
        for (int x = 0; x < mw; ++x) {
            double win_sum = 0.0;
            for (int t = 0; t < q; ++t) {
                const double* irow = image.row(y + t) + x;
                for (int s = 0; s < p; ++s) win_sum += irow[s];
            }
            const double win_mean = win_sum / static_cast<double>(p * q);

            double num = 0.0;
            double si2 = 0.0;
            for (int t = 0; t < q; ++t) {
                const double* irow = image.row(y + t) + x;
                const double* trow = tmpl.row(t);
                for (int s = 0; s < p; ++s) {
                    const double di = irow[s] - win_mean;
                    num += di * (trow[s] - tbar);
                    si2 += di * di;  // must mirror Kernel's norm_sq loop, see Kernel()
                }
            }
            const double den = si2 * st2;
            // gamma = num / sqrt(den), written as copysign(sqrt(num^2/den)):
            // a perfectly (anti)correlated window makes num^2 and den the
            // same floating-point product, so gamma lands on exactly +-1.
            map.at(x, y) = den > 0.0 ? std::copysign(std::sqrt(num * num / den), num) : 0.0;
        }
    }
    return map;
}

CorrelationMap ncc_map_fast(const RealGrid& image, const Kernel& kernel) {
    require_fits(image, kernel);
    const int w = image.width;
    const int h = image.height;
    const int p = kernel.width();
    const int q = kernel.height();
    const int mw = w - p + 1;
    const int mh = h - q + 1;
    CorrelationMap map(mw, mh);

    // Inclusive prefix sums with a zero border row/column: sat[y][x] holds the
    // sum over the rectangle [0,x) x [0,y).
    const int sw = w + 1;
    std::vector<double> sat(static_cast<std::size_t>(sw) * (h + 1), 0.0);
    std::vector<double> sat2(static_cast<std::size_t>(sw) * (h + 1), 0.0);
    for (int y = 0; y < h; ++y) {
        const double* irow = image.row(y);
        double run = 0.0;
        double run2 = 0.0;
        double* cur = &sat[static_cast<std::size_t>(y + 1) * sw];
        double* cur2 = &sat2[static_cast<std::size_t>(y + 1) * sw];
        const double* up = &sat[static_cast<std::size_t>(y) * sw];
        const double* up2 = &sat2[static_cast<std::size_t>(y) * sw];
        for (int x = 0; x < w; ++x) {
            const double v = irow[x];
            run += v;
            run2 += v * v;
            cur[x + 1] = up[x + 1] + run;
            cur2[x + 1] = up2[x + 1] + run2;
        }
    }
    auto window_sum = [&](const std::vector<double>& s, int x, int y) {
        const double* top = &s[static_cast<std::size_t>(y) * sw];
        const double* bot = &s[static_cast<std::size_t>(y + q) * sw];
        return bot[x + p] - bot[x] - top[x + p] + top[x];
    };

    const double st2 = kernel.centered_norm_sq();
    const double* centered = kernel.centered().data();
    const double residue = kernel.centered_residue();
    const double inv_pq = 1.0 / static_cast<double>(p * q);

#pragma omp parallel for schedule(static)
    for (int y = 0; y < mh; ++y) {
        for (int x = 0; x < mw; ++x) {
            const double s1 = window_sum(sat, x, y);
            const double s2 = window_sum(sat2, x, y);
            const double si2 = std::max(0.0, s2 - s1 * s1 * inv_pq);
            const double den = si2 * st2;
            if (den <= 0.0) {
                map.at(x, y) = 0.0;
                continue;
            }
            double num = 0.0;
            for (int t = 0; t < q; ++t) {
                const double* irow = image.row(y + t) + x;
                const double* krow = centered + static_cast<std::size_t>(t) * p;
                double dot = 0.0;
#pragma omp simd reduction(+ : dot)
                for (int s = 0; s < p; ++s) dot += irow[s] * krow[s];
                num += dot;
            }
            // sum(dI*dT) = sum(I*dT) - win_mean * sum(dT); the second term is
            // zero in real arithmetic but subtracting the floating-point
            // residue keeps the fast path glued to the reference.
            num -= s1 * inv_pq * residue;
            map.at(x, y) = std::copysign(std::sqrt(num * num / den), num);
        }
    }
    return map;
}

MatchPoint match_point(const CorrelationMap& map) {
    if (map.data.empty()) throw InvalidArgument("match_point: empty map");
    MatchPoint best{0, 0, map.data[0]};
    for (int y = 0; y < map.height; ++y) {
        for (int x = 0; x < map.width; ++x) {
            const double g = map.at(x, y);
            if (g > best.gamma) best = {x, y, g};
        }
    }
    return best;
}

RealGrid central_crop(const RealGrid& grid, double fraction) {
    if (!(fraction > 0.0) || fraction > 1.0) {
        throw InvalidArgument("central_crop: fraction must be in (0, 1]");
    }
    const int cw = static_cast<int>(grid.width * fraction);
    const int ch = static_cast<int>(grid.height * fraction);
    if (cw < 1 || ch < 1) throw InvalidArgument("central_crop: degenerate crop");
    const int ox = (grid.width - cw) / 2;
    const int oy = (grid.height - ch) / 2;
    RealGrid out(cw, ch);
    for (int y = 0; y < ch; ++y) {
        const double* src = grid.row(oy + y) + ox;
        std::copy_n(src, cw, out.data.begin() + static_cast<std::size_t>(y) * cw);
    }
    return out;
}

CorrelationMap autocorrelation_map(const RealGrid& template_img, double kernel_fraction) {
    return ncc_map_fast(template_img, make_kernel(central_crop(template_img, kernel_fraction)));
}

}  // namespace gestrec
