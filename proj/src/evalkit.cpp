#include "gestrec/evalkit.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "gestrec/errors.hpp"

namespace gestrec {

std::uint64_t EvaluationReport::total_input() const {
    return std::accumulate(per_class.begin(), per_class.end(), std::uint64_t{0},
                           [](std::uint64_t a, const ClassStats& s) { return a + s.input; });
}

std::uint64_t EvaluationReport::total_recognized() const {
    return std::accumulate(per_class.begin(), per_class.end(), std::uint64_t{0},
                           [](std::uint64_t a, const ClassStats& s) { return a + s.recognized; });
}

EvaluationReport evaluate(const TemplateRegistry& registry,
                          const std::vector<LabeledSample>& samples,
                          const StructuringElement& se) {
    EvaluationReport report;
    std::unordered_map<std::string, std::size_t> row_of;
    for (const auto& entry : registry.entries()) {
        row_of.emplace(entry.label, report.labels.size());
        report.labels.push_back(entry.label);
    }
    const std::size_t n = report.labels.size();
    report.per_class.resize(n);
    report.confusion.assign(n * (n + 1), 0);

    for (const auto& sample : samples) {
        if (!row_of.contains(sample.label)) {
            throw ConfigError("dataset label '" + sample.label + "' is not in the registry");
        }
    }

    // Predictions are independent per sample; counting afterwards keeps the
    // report identical to a sequential run.
    std::vector<std::size_t> predicted(samples.size());
    std::exception_ptr error;
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < samples.size(); ++i) {
        try {
            const RecognitionResult r = recognize(samples[i].image, registry, se);
            predicted[i] = row_of.at(r.label);
        } catch (const EmptyForegroundError&) {
            predicted[i] = n;  // reject column
        } catch (...) {
#pragma omp critical
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);

    for (std::size_t i = 0; i < samples.size(); ++i) {
        const std::size_t row = row_of.at(samples[i].label);
        ++report.per_class[row].input;
        ++report.confusion[row * (n + 1) + predicted[i]];
        if (predicted[i] == row) ++report.per_class[row].recognized;
    }
    return report;
}

std::int64_t accuracy_basis_points(std::uint64_t recognized, std::uint64_t input) {
    if (input == 0) throw InvalidArgument("accuracy: input count must be positive");
    return static_cast<std::int64_t>(10000 * recognized / input);
}

double accuracy_pct(std::uint64_t recognized, std::uint64_t input) {
    return static_cast<double>(accuracy_basis_points(recognized, input)) / 100.0;
}

std::string format_accuracy(std::uint64_t recognized, std::uint64_t input) {
    const std::int64_t bp = accuracy_basis_points(recognized, input);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%lld.%02lld", static_cast<long long>(bp / 100),
                  static_cast<long long>(bp % 100));
    return buf;
}

std::string render_report(const EvaluationReport& report, ReportFormat format) {
    std::ostringstream out;
    const std::size_t n = report.labels.size();
    // A class (or run) with no inputs has no defined ratio; render a dash.
    const auto acc = [](std::uint64_t recognized, std::uint64_t input) {
        return input ? format_accuracy(recognized, input) : std::string("-");
    };

    if (format == ReportFormat::text) {
        char line[128];
        std::snprintf(line, sizeof line, "%-14s %7s %12s %10s\n", "Hand Gesture", "Input",
                      "Recognized", "Accuracy");
        out << line;
        if (n == 0) return out.str();
        for (std::size_t i = 0; i < n; ++i) {
            const ClassStats& s = report.per_class[i];
            std::snprintf(line, sizeof line, "%-14s %7llu %12llu %10s\n",
                          report.labels[i].c_str(), static_cast<unsigned long long>(s.input),
                          static_cast<unsigned long long>(s.recognized),
                          acc(s.recognized, s.input).c_str());
            out << line;
        }
        std::snprintf(line, sizeof line, "%-14s %7llu %12llu %10s\n", "Total",
                      static_cast<unsigned long long>(report.total_input()),
                      static_cast<unsigned long long>(report.total_recognized()),
                      acc(report.total_recognized(), report.total_input()).c_str());
        out << line;
        return out.str();
    }

    out << "class,input,recognized,accuracy_pct\n";
    if (n == 0) return out.str();
    for (std::size_t i = 0; i < n; ++i) {
        const ClassStats& s = report.per_class[i];
        out << report.labels[i] << ',' << s.input << ',' << s.recognized << ','
            << acc(s.recognized, s.input) << '\n';
    }
    out << "Total," << report.total_input() << ',' << report.total_recognized() << ','
        << acc(report.total_recognized(), report.total_input()) << '\n';

    out << "\nconfusion";
    for (const auto& label : report.labels) out << ',' << label;
    out << ',' << kRejectColumn << '\n';
    for (std::size_t i = 0; i < n; ++i) {
        out << report.labels[i];
        for (std::size_t j = 0; j <= n; ++j) out << ',' << report.confusion_at(i, j);
        out << '\n';
    }
    return out.str();
}

}  // namespace gestrec
