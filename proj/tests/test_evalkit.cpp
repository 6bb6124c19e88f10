#include <doctest.h>

#include <cstdint>
#include <string>
#include <vector>

#include "gestrec/errors.hpp"
#include "gestrec/evalkit.hpp"
#include "gestrec/rng.hpp"
#include "gestrec/synthgest.hpp"

#include "oracles.hpp"

using namespace gestrec;

namespace {

const StructuringElement& se3() {
    static const StructuringElement se = StructuringElement::square(3);
    return se;
}

TemplateRegistry two_class_registry(std::uint64_t seed) {
    TemplateRegistry reg(64, 0.5);
    for (int c = 0; c < 2; ++c) {
        enroll(class_label(c, 2), render(class_spec(c, 2, seed), RenderParams{}).image, reg, se3());
    }
    return reg;
}

}  // namespace

TEST_CASE("accuracy arithmetic reproduces the truncated two-decimal values") {
    CHECK(accuracy_basis_points(20, 21) == 9523);
    CHECK(accuracy_basis_points(19, 21) == 9047);
    CHECK(accuracy_basis_points(498, 504) == 9880);
    CHECK(accuracy_basis_points(21, 21) == 10000);
    CHECK(accuracy_basis_points(0, 7) == 0);

    CHECK(format_accuracy(20, 21) == "95.23");
    CHECK(format_accuracy(19, 21) == "90.47");
    CHECK(format_accuracy(498, 504) == "98.80");
    CHECK(format_accuracy(21, 21) == "100.00");
    CHECK(format_accuracy(1, 3) == "33.33");
    CHECK(format_accuracy(0, 9) == "0.00");

    CHECK(accuracy_pct(20, 21) == 95.23);
    CHECK(accuracy_pct(498, 504) == 98.80);

    CHECK_THROWS_AS(accuracy_basis_points(1, 0), InvalidArgument);
    CHECK_THROWS_AS(format_accuracy(0, 0), InvalidArgument);
}

TEST_CASE("accuracy formatting matches the floored-division oracle") {
    SplitMix64 rng(64);
    for (int t = 0; t < 200; ++t) {
        const std::uint64_t input = 1 + rng.next() % 5000;
        const std::uint64_t recognized = rng.next() % (input + 1);
        CHECK(format_accuracy(recognized, input) == oracle::accuracy_string(recognized, input));
    }
}

TEST_CASE("evaluate fills counts, confusion, and the reject column") {
    const TemplateRegistry reg = two_class_registry(13);

    std::vector<LabeledSample> samples;
    samples.push_back({"A", render(class_spec(0, 2, 13), RenderParams{}).image});
    samples.push_back({"B", render(class_spec(1, 2, 13), RenderParams{}).image});
    samples.push_back({"A", GrayImage(32, 32, 50)});  // preprocessing fails -> reject

    const EvaluationReport report = evaluate(reg, samples, se3());
    REQUIRE(report.labels == std::vector<std::string>{"A", "B"});
    CHECK(report.per_class[0].input == 2);
    CHECK(report.per_class[0].recognized == 1);
    CHECK(report.per_class[1].input == 1);
    CHECK(report.per_class[1].recognized == 1);
    CHECK(report.total_input() == 3);
    CHECK(report.total_recognized() == 2);

    CHECK(report.confusion_at(0, 0) == 1);  // A -> A
    CHECK(report.confusion_at(0, 1) == 0);  // A -> B
    CHECK(report.confusion_at(0, 2) == 1);  // A -> reject
    CHECK(report.confusion_at(1, 0) == 0);
    CHECK(report.confusion_at(1, 1) == 1);
    CHECK(report.confusion_at(1, 2) == 0);

    // Row sums equal input counts; the diagonal equals recognized counts.
    for (std::size_t i = 0; i < 2; ++i) {
        std::uint64_t row = 0;
        for (std::size_t j = 0; j <= 2; ++j) row += report.confusion_at(i, j);
        CHECK(row == report.per_class[i].input);
        CHECK(report.confusion_at(i, i) == report.per_class[i].recognized);
    }
}

TEST_CASE("evaluate rejects labels missing from the registry") {
    const TemplateRegistry reg = two_class_registry(17);
    std::vector<LabeledSample> samples;
    samples.push_back({"Z", render(class_spec(0, 2, 17), RenderParams{}).image});
    CHECK_THROWS_AS(evaluate(reg, samples, se3()), ConfigError);
}

TEST_CASE("evaluating the enrollment images gives 100% everywhere") {
    const TemplateRegistry reg = two_class_registry(23);
    std::vector<LabeledSample> samples;
    for (int c = 0; c < 2; ++c) {
        samples.push_back({class_label(c, 2), render(class_spec(c, 2, 23), RenderParams{}).image});
    }
    const EvaluationReport report = evaluate(reg, samples, se3());
    for (const auto& cs : report.per_class) CHECK(cs.recognized == cs.input);
    CHECK(format_accuracy(report.total_recognized(), report.total_input()) == "100.00");
}

TEST_CASE("text report renders the fixed-width accuracy table") {
    EvaluationReport report;
    report.labels = {"A", "B"};
    report.per_class = {{2, 2}, {3, 2}};
    report.confusion = {2, 0, 0, 1, 2, 0};

    const std::string want =
        "Hand Gesture     Input   Recognized   Accuracy\n"
        "A                    2            2     100.00\n"
        "B                    3            2      66.66\n"
        "Total                5            4      80.00\n";
    CHECK(render_report(report, ReportFormat::text) == want);
}

TEST_CASE("csv report appends the labeled confusion block") {
    EvaluationReport report;
    report.labels = {"A", "B"};
    report.per_class = {{2, 2}, {3, 2}};
    report.confusion = {2, 0, 0, 1, 2, 0};

    const std::string want =
        "class,input,recognized,accuracy_pct\n"
        "A,2,2,100.00\n"
        "B,3,2,66.66\n"
        "Total,5,4,80.00\n"
        "\n"
        "confusion,A,B,∅\n"
        "A,2,0,0\n"
        "B,1,2,0\n";
    CHECK(render_report(report, ReportFormat::csv) == want);
}

TEST_CASE("classes with no inputs render a dash instead of a ratio") {
    EvaluationReport report;
    report.labels = {"A", "B"};
    report.per_class = {{4, 3}, {0, 0}};
    report.confusion = {3, 1, 0, 0, 0, 0};

    const std::string text = render_report(report, ReportFormat::text);
    CHECK(text.find("B                    0            0          -\n") != std::string::npos);
    const std::string csv = render_report(report, ReportFormat::csv);
    CHECK(csv.find("B,0,0,-\n") != std::string::npos);
}

TEST_CASE("empty report renders headers only") {
    EvaluationReport report;
    CHECK(render_report(report, ReportFormat::text) ==
          "Hand Gesture     Input   Recognized   Accuracy\n");
    CHECK(render_report(report, ReportFormat::csv) == "class,input,recognized,accuracy_pct\n");
}
