// gestrec: synthesize datasets, enroll templates, recognize and evaluate
// gestures, benchmark the correlation kernels. Exit codes: 0 success,
// 2 usage/config error, 3 recognition impossible (empty foreground).
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gestrec/classifier.hpp"
#include "gestrec/correlation.hpp"
#include "gestrec/errors.hpp"
#include "gestrec/evalkit.hpp"
#include "gestrec/morphology.hpp"
#include "gestrec/raster.hpp"
#include "gestrec/rng.hpp"
#include "gestrec/synthgest.hpp"

namespace {

using namespace gestrec;

struct SynthArgs {
    int classes = 24;
    int per_class = 21;
    std::uint64_t seed = 42;
    std::string out;
};

struct EnrollArgs {
    std::string dataset;
    std::string registry;
    int canonical_size = 128;
    double kernel_fraction = 0.5;
    int se_side = 3;
};

struct RecognizeArgs {
    std::string image;
    std::string registry;
    int se_side = 3;
    bool scores = false;
};

struct EvalArgs {
    std::string dataset;
    std::string registry;
    std::string csv;
    int se_side = 3;
};

struct BenchArgs {
    int size = 128;
    int kernel = 64;
    int iters = 5;
};

void run_synth(const SynthArgs& a) {
    const Dataset ds = generate_dataset(a.classes, a.per_class, a.seed);
    write_dataset(ds, a.out);
    std::cerr << "wrote " << ds.samples.size() << " samples to " << a.out << '\n';
}

void run_enroll(const EnrollArgs& a) {
    const Dataset ds = load_dataset(a.dataset);
    const StructuringElement se = StructuringElement::square(a.se_side);
    TemplateRegistry registry(a.canonical_size, a.kernel_fraction);
    for (int c = 0; c < ds.classes; ++c) {
        const Sample& sample = ds.at(c, 0);
        try {
            enroll(sample.label, sample.image, registry, se);
        } catch (const EmptyForegroundError& e) {
            // A template that cannot be preprocessed is a config problem,
            // not a per-query rejection.
            throw ConfigError("enrollment sample '" + sample.label + "': " + e.what());
        }
    }
    save_registry(registry, a.registry);
    std::cerr << "enrolled " << registry.size() << " classes into " << a.registry << '\n';
}

void run_recognize(const RecognizeArgs& a) {
    const TemplateRegistry registry = load_registry(a.registry);
    const GrayImage img = read_pgm(a.image);
    const StructuringElement se = StructuringElement::square(a.se_side);
    const RecognitionResult r = recognize(img, registry, se);
    // Line 1 is the decision; with --scores the per-class table follows in
    // registry order, same tab-separated shape.
    std::printf("%s\t%.9f\n", r.label.c_str(), r.mse);
    if (a.scores) {
        for (const auto& [label, mse] : r.per_class_scores) {
            std::printf("%s\t%.9f\n", label.c_str(), mse);
        }
    }
}

void run_eval(const EvalArgs& a) {
    const TemplateRegistry registry = load_registry(a.registry);
    Dataset ds = load_dataset(a.dataset);
    std::vector<LabeledSample> samples;
    samples.reserve(ds.samples.size());
    for (Sample& s : ds.samples) samples.push_back({s.label, std::move(s.image)});
    const StructuringElement se = StructuringElement::square(a.se_side);
    const EvaluationReport report = evaluate(registry, samples, se);
    std::fputs(render_report(report, ReportFormat::text).c_str(), stdout);
    if (!a.csv.empty()) {
        std::ofstream out(a.csv, std::ios::binary | std::ios::trunc);
        if (!out) throw ConfigError("cannot write " + a.csv);
        out << render_report(report, ReportFormat::csv);
    }
}

void run_bench(const BenchArgs& a) {
    if (a.iters < 1) throw InvalidArgument("bench: --iters must be at least 1");
    if (a.kernel < 1 || a.size < 1) throw InvalidArgument("bench: sizes must be positive");
    if (a.kernel > a.size) throw InvalidArgument("bench: kernel larger than image");

    SplitMix64 rng(0x62656E6368ULL);  // fixed workload; results depend only on flags
    RealGrid image(a.size, a.size);
    for (double& v : image.data) v = rng.uniform(0.0, 255.0);
    RealGrid kvals(a.kernel, a.kernel);
    for (double& v : kvals.data) v = rng.uniform(0.0, 255.0);
    const Kernel kernel = make_kernel(std::move(kvals));

    const CorrelationMap ref = ncc_map_reference(image, kernel);
    const CorrelationMap fast = ncc_map_fast(image, kernel);
    double max_diff = 0.0;
    for (std::size_t i = 0; i < ref.data.size(); ++i) {
        max_diff = std::max(max_diff, std::abs(ref.data[i] - fast.data[i]));
    }
    if (max_diff > 1e-9) {
        throw Error("bench: fast path diverges from reference by " + std::to_string(max_diff));
    }
    std::fprintf(stderr, "equivalence ok: max |fast - reference| = %.3e\n", max_diff);

    const auto best_ns = [&](auto&& fn) {
        double best = std::numeric_limits<double>::infinity();
        for (int i = 0; i < a.iters; ++i) {
            const auto t0 = std::chrono::steady_clock::now();
            fn();
            const auto t1 = std::chrono::steady_clock::now();
            best = std::min(best, std::chrono::duration<double, std::nano>(t1 - t0).count());
        }
        return best;
    };
    const double windows = static_cast<double>(ref.data.size());
    const double ref_ns = best_ns([&] { ncc_map_reference(image, kernel); }) / windows;
    const double fast_ns = best_ns([&] { ncc_map_fast(image, kernel); }) / windows;

    std::printf("size %d  kernel %d  windows %d  iters %d\n", a.size, a.kernel,
                ref.width * ref.height, a.iters);
    std::printf("reference  %12.1f ns/window\n", ref_ns);
    std::printf("fast       %12.1f ns/window\n", fast_ns);
    std::printf("speedup    %11.2fx\n", ref_ns / fast_ns);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"static hand gesture recognition toolkit"};
    app.require_subcommand(1);

    SynthArgs synth_args;
    auto* synth = app.add_subcommand("synth", "generate a deterministic synthetic dataset");
    synth->add_option("--classes", synth_args.classes, "number of gesture classes (>= 2)");
    synth->add_option("--per-class", synth_args.per_class, "samples per class (>= 1)");
    synth->add_option("--seed", synth_args.seed, "dataset seed");
    synth->add_option("--out", synth_args.out, "output directory")->required();
    synth->callback([&] { run_synth(synth_args); });

    EnrollArgs enroll_args;
    auto* enroll = app.add_subcommand("enroll", "build a template registry from a dataset");
    enroll->add_option("--dataset", enroll_args.dataset, "dataset directory")->required();
    enroll->add_option("--registry", enroll_args.registry, "registry output directory")->required();
    enroll->add_option("--canonical-size", enroll_args.canonical_size, "canonical frame side");
    enroll->add_option("--kernel-fraction", enroll_args.kernel_fraction,
                       "central crop fraction for the correlation kernel");
    enroll->add_option("--se", enroll_args.se_side, "denoising structuring element side (odd)");
    enroll->callback([&] { run_enroll(enroll_args); });

    RecognizeArgs rec_args;
    auto* rec = app.add_subcommand("recognize", "classify a single image");
    rec->add_option("--image", rec_args.image, "query PGM image")->required();
    rec->add_option("--registry", rec_args.registry, "registry directory")->required();
    rec->add_option("--se", rec_args.se_side, "denoising structuring element side (odd)");
    rec->add_flag("--scores", rec_args.scores, "also print the per-class MSE table");
    rec->callback([&] { run_recognize(rec_args); });

    EvalArgs eval_args;
    auto* eval = app.add_subcommand("eval", "evaluate a dataset against a registry");
    eval->add_option("--dataset", eval_args.dataset, "dataset directory")->required();
    eval->add_option("--registry", eval_args.registry, "registry directory")->required();
    eval->add_option("--csv", eval_args.csv, "also write the CSV report (with confusion matrix)");
    eval->add_option("--se", eval_args.se_side, "denoising structuring element side (odd)");
    eval->callback([&] { run_eval(eval_args); });

    BenchArgs bench_args;
    auto* bench = app.add_subcommand("bench", "compare the reference and fast correlation paths");
    bench->add_option("--size", bench_args.size, "square image side");
    bench->add_option("--kernel", bench_args.kernel, "square kernel side");
    bench->add_option("--iters", bench_args.iters, "timing repetitions (best of)");
    bench->callback([&] { run_bench(bench_args); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const gestrec::EmptyForegroundError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const gestrec::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
