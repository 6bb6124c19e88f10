#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gestrec/classifier.hpp"
#include "gestrec/morphology.hpp"
#include "gestrec/raster.hpp"

namespace gestrec {

/// Column label for samples whose preprocessing failed (empty foreground);
/// they count as misclassified instead of aborting the run.
inline const std::string kRejectColumn = "∅";

struct ClassStats {
    std::uint64_t input = 0;
    std::uint64_t recognized = 0;
};

/// Per-class accuracy table plus confusion matrix. Rows are true classes in
/// registry order; columns are the same classes plus the reject column.
struct EvaluationReport {
    std::vector<std::string> labels;
    std::vector<ClassStats> per_class;       // parallel to labels
    std::vector<std::uint64_t> confusion;    // labels.size() x (labels.size()+1), row-major

    std::uint64_t confusion_at(std::size_t row, std::size_t col) const {
        return confusion[row * (labels.size() + 1) + col];
    }
    std::uint64_t total_input() const;
    std::uint64_t total_recognized() const;
};

struct LabeledSample {
    std::string label;
    GrayImage image;
};

/// Classifies every sample and accumulates counts. Every sample label must
/// already exist in the registry.
EvaluationReport evaluate(const TemplateRegistry& registry,
                          const std::vector<LabeledSample>& samples,
                          const StructuringElement& se);

/// 100 * recognized / input in basis points (integer, exact), truncated --
/// not rounded -- to 2 decimals: 20/21 -> 9523.
std::int64_t accuracy_basis_points(std::uint64_t recognized, std::uint64_t input);

/// Same value as a double (basis points / 100).
double accuracy_pct(std::uint64_t recognized, std::uint64_t input);

/// Canonical "95.23"-style rendering of the truncated percentage.
std::string format_accuracy(std::uint64_t recognized, std::uint64_t input);

enum class ReportFormat { text, csv };

/// Deterministic report rendering. The text form mirrors the per-class
/// accuracy table; csv adds the full confusion matrix as a labeled block.
std::string render_report(const EvaluationReport& report, ReportFormat format);

}  // namespace gestrec
