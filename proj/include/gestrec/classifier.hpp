#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "gestrec/correlation.hpp"
#include "gestrec/morphology.hpp"
#include "gestrec/raster.hpp"
#include "gestrec/segmentation.hpp"

namespace gestrec {

/// Shared pipeline defaults. The canonical size fixes the frame all
/// silhouettes are resized to, so every auto- and cross-correlation map has
/// the same geometry and their mean squared error is well defined.
struct PipelineConfig {
    int canonical_size = 128;
    double kernel_fraction = 0.5;
    int se_side = 3;
};

/// One enrolled gesture class: canonical silhouette plus its precomputed
/// auto-correlation surface.
struct GestureTemplate {
    std::string label;
    BinaryImage canonical;
    CorrelationMap auto_map;
};

class TemplateRegistry {
public:
    TemplateRegistry(int canonical_size, double kernel_fraction);

    int canonical_size() const { return canonical_size_; }
    double kernel_fraction() const { return kernel_fraction_; }
    const std::vector<GestureTemplate>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }
    std::size_t size() const { return entries_.size(); }
    bool has_label(const std::string& label) const;

    /// Appends a template; the label must be new and the canonical silhouette
    /// must match the registry geometry.
    void add(GestureTemplate entry);

private:
    int canonical_size_;
    double kernel_fraction_;
    std::vector<GestureTemplate> entries_;
};

struct RecognitionResult {
    std::string label;
    double mse = 0.0;
    /// Per-class MSE table in registry order.
    std::vector<std::pair<std::string, double>> per_class_scores;
};

/// Segmentation -> denoising -> canonicalization:
/// resize(denoise_pipeline(binarize(img, otsu(img)), se), S, S).
/// Throws EmptyForegroundError when nothing survives segmentation.
BinaryImage preprocess(const GrayImage& img, const StructuringElement& se, int canonical_size);

/// Preprocesses and stores a new gesture template with its auto-correlation map.
void enroll(const std::string& label, const GrayImage& img, TemplateRegistry& registry,
            const StructuringElement& se);

/// Mean squared error between the template's auto-correlation map and the
/// query's cross-correlation map against the template's central kernel.
/// The query must already be canonical (S x S).
double score(const BinaryImage& query_canonical, const GestureTemplate& tmpl,
             double kernel_fraction);

/// Classifies a query image: preprocess, score against every template,
/// return the argmin-MSE label (ties to the lexicographically smallest
/// label) together with the full score table.
RecognitionResult recognize(const GrayImage& img, const TemplateRegistry& registry,
                            const StructuringElement& se);

/// On-disk layout: <dir>/registry.json plus one canonical-silhouette PGM per
/// entry (foreground 255). The manifest stores a CRC-32 of each PGM's bytes
/// as 8 lowercase hex digits; load verifies it and recomputes the auto maps.
void save_registry(const TemplateRegistry& registry, const std::filesystem::path& dir);
TemplateRegistry load_registry(const std::filesystem::path& dir);

}  // namespace gestrec
