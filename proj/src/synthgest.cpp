#include "gestrec/synthgest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

#include <json.hpp>

#include "gestrec/errors.hpp"
#include "gestrec/morphology.hpp"
#include "gestrec/rng.hpp"

namespace gestrec {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr std::uint64_t kClassStreamTag = 0x636C6173ULL;   // class geometry streams
constexpr std::uint64_t kSampleStreamTag = 0x73616D70ULL;  // per-sample perturbation streams

constexpr double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }

bool point_in_spec(const GestureSpec& spec, double px, double py) {
    const double dx = px - spec.palm_x;
    const double dy = py - spec.palm_y;
    if (dx * dx + dy * dy <= spec.palm_radius * spec.palm_radius) return true;
    for (const Finger& f : spec.fingers) {
        const double a = deg_to_rad(f.angle_deg);
        const double ux = std::cos(a);
        const double uy = std::sin(a);
        const double along = dx * ux + dy * uy;
        const double across = -dx * uy + dy * ux;
        // Fingers start slightly inside the palm edge so they weld to the disc.
        const double start = spec.palm_radius - 3.0;
        if (along >= start && along <= start + f.length && std::abs(across) <= f.width * 0.5) {
            return true;
        }
    }
    return false;
}

void check_margin(const BinaryImage& mask, int class_id) {
    for (int y = 0; y < mask.height; ++y) {
        const bool border_row = y < kFrameMargin || y >= mask.height - kFrameMargin;
        for (int x = 0; x < mask.width; ++x) {
            if (!mask.at(x, y)) continue;
            if (border_row || x < kFrameMargin || x >= mask.width - kFrameMargin) {
                throw GenerationError("class " + std::to_string(class_id) +
                                      ": geometry violates the " + std::to_string(kFrameMargin) +
                                      "px frame margin at (" + std::to_string(x) + "," +
                                      std::to_string(y) + ")");
            }
        }
    }
}

ordered_json params_to_json(const RenderParams& p) {
    return {{"rotation_deg", p.rotation_deg}, {"translate_x", p.translate_x},
            {"translate_y", p.translate_y},   {"noise_sigma", p.noise_sigma},
            {"speck_prob", p.speck_prob},     {"noise_seed", p.noise_seed}};
}

RenderParams params_from_json(const ordered_json& j, int fg, int bg) {
    RenderParams p;
    p.fg_level = fg;
    p.bg_level = bg;
    p.rotation_deg = j.value("rotation_deg", 0.0);
    p.translate_x = j.value("translate_x", 0.0);
    p.translate_y = j.value("translate_y", 0.0);
    p.noise_sigma = j.value("noise_sigma", 0.0);
    p.speck_prob = j.value("speck_prob", 0.0);
    p.noise_seed = j.value("noise_seed", std::uint64_t{0});
    return p;
}

}  // namespace

const Sample& Dataset::at(int class_id, int index) const {
    return samples.at(static_cast<std::size_t>(class_id) * per_class + index);
}

std::string class_label(int class_id, int class_count) {
    // The 24 static manual-alphabet letters (J and Z are dynamic).
    static constexpr char kLetters[] = "ABCDEFGHIKLMNOPQRSTUVWXY";
    if (class_id < 0 || class_id >= class_count) {
        throw InvalidArgument("class_label: class id " + std::to_string(class_id) +
                              " out of range [0, " + std::to_string(class_count) + ")");
    }
    if (class_count <= 24) return std::string(1, kLetters[class_id]);
    char buf[16];
    std::snprintf(buf, sizeof buf, "G%02d", class_id);
    return buf;
}

GestureSpec class_spec(int class_id, int class_count, std::uint64_t seed) {
    if (class_count < 1) throw InvalidArgument("class_spec: class count must be positive");
    if (class_id < 0 || class_id >= class_count) {
        throw InvalidArgument("class_spec: class id " + std::to_string(class_id) +
                              " out of range [0, " + std::to_string(class_count) + ")");
    }

    SplitMix64 rng(substream_seed(seed, kClassStreamTag, static_cast<std::uint64_t>(class_id)));

    // Geometry mixes several structural features with coprime strides so any
    // two classes disagree on at least one high-area feature: finger count,
    // palm radius (a disc-size mismatch survives translation, which only
    // shifts the correlation surface), palm offset, fan direction, fan
    // twist, and a thumb bar. Pairwise silhouette distinctness and the
    // classifier margins are both checked empirically in the test suite.
    const int finger_count = 1 + class_id % 5;
    const int radius_idx = (2 * class_id) % 5;
    const int variant = (class_id / 5) % 5;
    const bool thumb = finger_count <= 2 || (class_id % 2 == 1 && finger_count <= 4);

    static constexpr double kOffsets[5][2] = {
        {-14.0, -14.0}, {14.0, -14.0}, {-14.0, 14.0}, {14.0, 14.0}, {0.0, 0.0}};
    // Twist offsets place the five fan widths (1..5 fingers) on disjoint
    // arcs, so same-variant classes never overlap finger regions.
    static constexpr double kTwist[5] = {0.0, 42.0, 103.0, 179.0, -87.0};

    GestureSpec spec;
    spec.class_id = class_id;
    spec.palm_x = 127.5 + kOffsets[variant][0] + rng.uniform(-1.6, 1.6);
    spec.palm_y = 127.5 + kOffsets[variant][1] + rng.uniform(-1.6, 1.6);
    spec.palm_radius = 30.0 + 4.5 * radius_idx + rng.uniform(-1.2, 1.2);

    const double base_angle =
        -90.0 + 40.0 * variant + kTwist[class_id % 5] + rng.uniform(-3.0, 3.0);
    const double step = 14.0 + 2.0 * ((class_id + variant) % 3);
    for (int i = 0; i < finger_count; ++i) {
        Finger f;
        f.angle_deg = base_angle + (i - (finger_count - 1) * 0.5) * step + rng.uniform(-1.5, 1.5);
        f.length = 34.0 + 3.0 * variant + rng.uniform(-2.5, 2.5);
        f.width = 15.0 + 4.0 * ((class_id + i) % 3) + rng.uniform(-0.8, 0.8);
        spec.fingers.push_back(f);
    }
    if (thumb) {
        Finger t;
        t.angle_deg = base_angle + 105.0 + rng.uniform(-2.0, 2.0);
        t.length = 0.85 * (34.0 + 3.0 * variant) + rng.uniform(-2.0, 2.0);
        t.width = 20.0 + rng.uniform(-0.8, 0.8);
        spec.fingers.push_back(t);
    }
    return spec;
}

Render render(const GestureSpec& spec, const RenderParams& params) {
    if (params.fg_level - params.bg_level < 64) {
        throw InvalidArgument("render: fg/bg contrast below 64 levels breaks separability");
    }
    if (params.speck_prob < 0.0 || params.speck_prob > 0.01) {
        throw InvalidArgument("render: speck probability must be in [0, 0.01]");
    }

    // Rasterize: a pixel is foreground iff its center, pulled back through
    // the rotation+translation, lies inside the palm or a finger.
    const double theta = deg_to_rad(params.rotation_deg);
    const double cos_t = std::cos(-theta);
    const double sin_t = std::sin(-theta);
    BinaryImage mask(kFrameSize, kFrameSize);
    for (int y = 0; y < kFrameSize; ++y) {
        for (int x = 0; x < kFrameSize; ++x) {
            const double cx = x + 0.5 - params.translate_x - spec.palm_x;
            const double cy = y + 0.5 - params.translate_y - spec.palm_y;
            const double qx = cx * cos_t - cy * sin_t + spec.palm_x;
            const double qy = cx * sin_t + cy * cos_t + spec.palm_y;
            mask.at(x, y) = point_in_spec(spec, qx, qy) ? 1 : 0;
        }
    }

    // Smooth with the default pipeline shape so the emitted truth is a fixed
    // point of open/close and rasterization staircases cannot diverge from
    // the preprocessed silhouette.
    const StructuringElement se = StructuringElement::square(3);
    BinaryImage truth = largest_component(close(open(mask, se), se));
    if (truth.foreground_count() == 0) {
        throw GenerationError("class " + std::to_string(spec.class_id) +
                              ": geometry rasterized to an empty mask");
    }
    check_margin(truth, spec.class_id);

    GrayImage gray(kFrameSize, kFrameSize);
    SplitMix64 rng(params.noise_seed);
    const bool noisy = params.noise_sigma > 0.0;
    const bool speckled = params.speck_prob > 0.0;
    for (std::size_t i = 0; i < gray.pixel_count(); ++i) {
        if (speckled && rng.uniform() < params.speck_prob) {
            gray.data[i] = 255;
            continue;
        }
        double v = truth.data[i] ? params.fg_level : params.bg_level;
        if (noisy) v += params.noise_sigma * rng.gaussian();
        gray.data[i] = static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
    }
    return {std::move(gray), std::move(truth)};
}

Dataset generate_dataset(int classes, int per_class, std::uint64_t seed) {
    if (classes < 2) throw InvalidArgument("generate_dataset: need at least 2 classes");
    if (per_class < 1) throw InvalidArgument("generate_dataset: need at least 1 sample per class");

    Dataset ds;
    ds.seed = seed;
    ds.classes = classes;
    ds.per_class = per_class;
    ds.samples.resize(static_cast<std::size_t>(classes) * per_class);

    // Every sample is a pure function of (seed, class_id, index), so the loop
    // can run in any order or in parallel without changing a byte. Exceptions
    // cannot leave a parallel region; the first one is stashed and rethrown.
    std::exception_ptr error;
#pragma omp parallel for schedule(dynamic)
    for (int c = 0; c < classes; ++c) {
        try {
        const GestureSpec spec = class_spec(c, classes, seed);
        const std::string label = class_label(c, classes);
        for (int k = 0; k < per_class; ++k) {
            SplitMix64 rng(substream_seed(seed, kSampleStreamTag,
                                          (static_cast<std::uint64_t>(c) << 32) |
                                              static_cast<std::uint64_t>(k)));
            RenderParams params;
            if (k > 0) {
                params.rotation_deg = rng.uniform(-kDefaultRotationRange, kDefaultRotationRange);
                params.translate_x = rng.uniform(-kDefaultTranslationRange, kDefaultTranslationRange);
                params.translate_y = rng.uniform(-kDefaultTranslationRange, kDefaultTranslationRange);
                params.noise_sigma = kDefaultNoiseSigma;
                params.speck_prob = kDefaultSpeckProb;
            }
            params.noise_seed = rng.next();

            Render r = render(spec, params);
            Sample& sample = ds.samples[static_cast<std::size_t>(c) * per_class + k];
            sample.label = label;
            sample.class_id = c;
            sample.index = k;
            sample.image = std::move(r.image);
            sample.truth = std::move(r.ground_truth);
            sample.params = params;
        }
        } catch (...) {
#pragma omp critical
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
    return ds;
}

void write_dataset(const Dataset& dataset, const std::filesystem::path& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);

    ordered_json manifest;
    manifest["seed"] = dataset.seed;
    manifest["classes"] = dataset.classes;
    manifest["per_class"] = dataset.per_class;
    manifest["frame_size"] = kFrameSize;
    manifest["fg_level"] = kDefaultFgLevel;
    manifest["bg_level"] = kDefaultBgLevel;
    manifest["perturbation"] = {{"rotation_deg", kDefaultRotationRange},
                                {"translation_px", kDefaultTranslationRange},
                                {"noise_sigma", kDefaultNoiseSigma},
                                {"speck_prob", kDefaultSpeckProb}};
    manifest["samples"] = ordered_json::array();

    for (const Sample& sample : dataset.samples) {
        char name[16];
        std::snprintf(name, sizeof name, "%02d.pgm", sample.index);
        const fs::path class_dir = dir / sample.label;
        fs::create_directories(class_dir);
        write_pgm(class_dir / name, sample.image);

        ordered_json entry = {{"label", sample.label},
                              {"class_id", sample.class_id},
                              {"index", sample.index},
                              {"file", sample.label + "/" + name}};
        entry.update(params_to_json(sample.params));
        manifest["samples"].push_back(std::move(entry));
    }

    std::ofstream out(dir / "manifest.json", std::ios::binary | std::ios::trunc);
    if (!out) throw LoadError("cannot write " + (dir / "manifest.json").string());
    out << manifest.dump(2) << '\n';
}

Dataset load_dataset(const std::filesystem::path& dir) {
    namespace fs = std::filesystem;
    const fs::path manifest_path = dir / "manifest.json";
    std::ifstream in(manifest_path, std::ios::binary);
    if (!in) throw LoadError("missing dataset manifest " + manifest_path.string());

    ordered_json manifest;
    try {
        in >> manifest;
    } catch (const nlohmann::json::exception& e) {
        throw LoadError("corrupt dataset manifest " + manifest_path.string() + ": " + e.what());
    }

    Dataset ds;
    ds.seed = manifest.value("seed", std::uint64_t{0});
    ds.classes = manifest.value("classes", 0);
    ds.per_class = manifest.value("per_class", 0);
    const int fg = manifest.value("fg_level", kDefaultFgLevel);
    const int bg = manifest.value("bg_level", kDefaultBgLevel);
    if (ds.classes < 1 || ds.per_class < 1) {
        throw LoadError("dataset manifest has invalid shape: " + manifest_path.string());
    }

    for (const auto& item : manifest.at("samples")) {
        Sample sample;
        sample.label = item.value("label", "");
        sample.class_id = item.value("class_id", -1);
        sample.index = item.value("index", -1);
        const std::string file = item.value("file", "");
        if (sample.label.empty() || file.empty() || sample.class_id < 0 || sample.index < 0) {
            throw LoadError("dataset manifest entry is incomplete in " + manifest_path.string());
        }
        sample.image = read_pgm(dir / file);
        sample.params = params_from_json(item, fg, bg);
        ds.samples.push_back(std::move(sample));
    }
    if (ds.samples.size() != static_cast<std::size_t>(ds.classes) * ds.per_class) {
        throw LoadError("dataset manifest sample count does not match classes x per_class");
    }
    return ds;
}

}  // namespace gestrec
