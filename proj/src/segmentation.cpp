#include "gestrec/segmentation.hpp"

#include "gestrec/errors.hpp"

namespace gestrec {

Histogram histogram(const GrayImage& img) {
    Histogram h;
    for (std::uint8_t v : img.data) ++h.counts[v];
    h.total = img.pixel_count();
    return h;
}

ThresholdResult otsu_threshold(const Histogram& h) {
    if (h.total == 0) throw InvalidArgument("otsu_threshold: empty histogram");

    // Degenerate single-bin histogram: no split carries information. Return
    // the occupied level itself so that binarize() yields an all-zero mask
    // and the failure surfaces downstream as an empty-foreground error.
    int occupied = -1;
    int occupied_bins = 0;
    for (int v = 0; v < 256; ++v) {
        if (h.counts[v] > 0) {
            occupied = v;
            ++occupied_bins;
        }
    }
    if (occupied_bins == 1) return {occupied, 0.0};

    // sigma_B^2(k) = D_k^2 / (N^2 * n0 * n1) with D_k = s0*n1 - s1*n0 over
    // integer counts, so candidates are ranked by exact integer
    // cross-multiplication: D_i^2 * n0_j*n1_j  vs  D_j^2 * n0_i*n1_i.
    // That makes the smallest-k tie rule and shift invariance exact instead
    // of ULP-dependent. The products fit unsigned __int128 for histograms of
    // up to ~8e5 pixels; larger ones take the double path below.
    const std::uint64_t total = h.total;
    const bool exact = total <= 800'000;
    std::uint64_t weighted_total = 0;
    for (int v = 0; v < 256; ++v) weighted_total += static_cast<std::uint64_t>(v) * h.counts[v];

    int best_k = 0;
    unsigned __int128 best_num = 0;  // D^2 at best_k
    std::uint64_t best_den = 1;      // n0*n1 at best_k
    double best_sigma = -1.0;
    bool have_best = false;

    std::uint64_t n0 = 0;
    std::uint64_t s0 = 0;
    for (int k = 0; k < 256; ++k) {
        n0 += h.counts[k];
        s0 += static_cast<std::uint64_t>(k) * h.counts[k];
        const std::uint64_t n1 = total - n0;
        if (n0 == 0 || n1 == 0) continue;  // sigma_B^2 = 0, never beats a real split
        const std::uint64_t s1 = weighted_total - s0;
        const std::uint64_t den = n0 * n1;

        if (exact) {
            const __int128 d = static_cast<__int128>(s0) * n1 - static_cast<__int128>(s1) * n0;
            const unsigned __int128 mag = static_cast<unsigned __int128>(d < 0 ? -d : d);
            const unsigned __int128 num = mag * mag;
            if (!have_best || num * best_den > best_num * den) {
                have_best = true;
                best_k = k;
                best_num = num;
                best_den = den;
            }
        } else {
            const double d = static_cast<double>(s0) * static_cast<double>(n1) -
                             static_cast<double>(s1) * static_cast<double>(n0);
            const double sigma = d * d / (static_cast<double>(den));
            if (!have_best || sigma > best_sigma) {
                have_best = true;
                best_k = k;
                best_sigma = sigma;
            }
        }
    }

    const double nn = static_cast<double>(total) * static_cast<double>(total);
    double sigma;
    if (exact) {
        sigma = static_cast<double>(best_num) / (nn * static_cast<double>(best_den));
    } else {
        sigma = best_sigma / nn;
    }
    return {best_k, sigma};
}

BinaryImage binarize(const GrayImage& img, int level) {
    BinaryImage out(img.width, img.height);
    for (std::size_t i = 0; i < img.data.size(); ++i) {
        out.data[i] = img.data[i] > level ? 1 : 0;
    }
    return out;
}

int otsu_level(const GrayImage& img) {
    return otsu_threshold(histogram(img)).level;
}

}  // namespace gestrec
