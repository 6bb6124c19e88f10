#include "gestrec/classifier.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

#include <zlib.h>

#include <json.hpp>

#include "gestrec/errors.hpp"

namespace gestrec {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string crc32_hex(const std::vector<std::uint8_t>& bytes) {
    const auto crc = static_cast<std::uint32_t>(
        ::crc32(0L, bytes.data(), static_cast<uInt>(bytes.size())));
    char buf[9];
    std::snprintf(buf, sizeof buf, "%08x", crc);
    return buf;
}

}  // namespace

TemplateRegistry::TemplateRegistry(int canonical_size, double kernel_fraction)
    : canonical_size_(canonical_size), kernel_fraction_(kernel_fraction) {
    if (canonical_size < 2) throw InvalidArgument("TemplateRegistry: canonical size must be >= 2");
    if (!(kernel_fraction > 0.0) || kernel_fraction > 1.0) {
        throw InvalidArgument("TemplateRegistry: kernel fraction must be in (0, 1]");
    }
}

bool TemplateRegistry::has_label(const std::string& label) const {
    return std::any_of(entries_.begin(), entries_.end(),
                       [&](const GestureTemplate& t) { return t.label == label; });
}

void TemplateRegistry::add(GestureTemplate entry) {
    if (has_label(entry.label)) {
        throw ConflictError("registry already contains label '" + entry.label + "'");
    }
    if (entry.canonical.width != canonical_size_ || entry.canonical.height != canonical_size_) {
        throw InvalidArgument("template '" + entry.label + "' is not canonical size");
    }
    entries_.push_back(std::move(entry));
}

BinaryImage preprocess(const GrayImage& img, const StructuringElement& se, int canonical_size) {
    if (canonical_size < 2) throw InvalidArgument("preprocess: canonical size must be >= 2");
    const BinaryImage mask = binarize(img, otsu_level(img));
    const BinaryImage denoised = denoise_pipeline(mask, se);
    if (denoised.foreground_count() == 0) {
        throw EmptyForegroundError("segmentation left no foreground pixels");
    }
    BinaryImage canonical = resize_nearest(denoised, canonical_size, canonical_size);
    if (canonical.foreground_count() == 0) {
        throw EmptyForegroundError("foreground vanished during canonicalization");
    }
    return canonical;
}

void enroll(const std::string& label, const GrayImage& img, TemplateRegistry& registry,
            const StructuringElement& se) {
    if (registry.has_label(label)) {
        throw ConflictError("registry already contains label '" + label + "'");
    }
    BinaryImage canonical = preprocess(img, se, registry.canonical_size());
    CorrelationMap auto_map = autocorrelation_map(to_real(canonical), registry.kernel_fraction());
    registry.add({label, std::move(canonical), std::move(auto_map)});
}

double score(const BinaryImage& query_canonical, const GestureTemplate& tmpl,
             double kernel_fraction) {
    if (query_canonical.width != tmpl.canonical.width ||
        query_canonical.height != tmpl.canonical.height) {
        throw InvalidArgument("score: query size does not match template '" + tmpl.label + "'");
    }
    // The cross map goes through the same fast kernel as the stored auto map,
    // so a query identical to the template scores exactly zero.
    const CorrelationMap cross =
        ncc_map_fast(to_real(query_canonical),
                     make_kernel(central_crop(to_real(tmpl.canonical), kernel_fraction)));
    if (cross.width != tmpl.auto_map.width || cross.height != tmpl.auto_map.height) {
        throw InvalidArgument("score: map geometry mismatch for template '" + tmpl.label + "'");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < cross.data.size(); ++i) {
        const double d = tmpl.auto_map.data[i] - cross.data[i];
        acc += d * d;
    }
    return acc / static_cast<double>(cross.data.size());
}

RecognitionResult recognize(const GrayImage& img, const TemplateRegistry& registry,
                            const StructuringElement& se) {
    if (registry.empty()) throw ConfigError("recognize: registry is empty");
    const BinaryImage query = preprocess(img, se, registry.canonical_size());

    const auto& entries = registry.entries();
    std::vector<double> scores(entries.size());
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < entries.size(); ++i) {
        scores[i] = score(query, entries[i], registry.kernel_fraction());
    }

    // Serial argmin after the parallel scoring keeps ties deterministic:
    // lowest MSE, then lexicographically smallest label.
    std::size_t best = 0;
    for (std::size_t i = 1; i < entries.size(); ++i) {
        if (scores[i] < scores[best] ||
            (scores[i] == scores[best] && entries[i].label < entries[best].label)) {
            best = i;
        }
    }

    RecognitionResult result;
    result.label = entries[best].label;
    result.mse = scores[best];
    result.per_class_scores.reserve(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
        result.per_class_scores.emplace_back(entries[i].label, scores[i]);
    }
    return result;
}

void save_registry(const TemplateRegistry& registry, const std::filesystem::path& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    const fs::path manifest_path = dir / "registry.json";
    if (fs::exists(manifest_path)) {
        throw ConflictError("registry already exists at " + manifest_path.string());
    }

    ordered_json manifest;
    manifest["canonical_size"] = registry.canonical_size();
    manifest["kernel_fraction"] = registry.kernel_fraction();
    manifest["entries"] = ordered_json::array();
    for (const auto& entry : registry.entries()) {
        const std::string file = entry.label + ".pgm";
        const auto bytes = encode_pgm(binary_to_gray(entry.canonical, 255, 0));
        std::ofstream out(dir / file, std::ios::binary | std::ios::trunc);
        if (!out) throw LoadError("cannot write " + (dir / file).string());
        out.write(reinterpret_cast<const char*>(bytes.data()),
                  static_cast<std::streamsize>(bytes.size()));
        manifest["entries"].push_back(
            {{"label", entry.label}, {"file", file}, {"checksum", crc32_hex(bytes)}});
    }

    std::ofstream out(manifest_path, std::ios::binary | std::ios::trunc);
    if (!out) throw LoadError("cannot write " + manifest_path.string());
    out << manifest.dump(2) << '\n';
}

TemplateRegistry load_registry(const std::filesystem::path& dir) {
    namespace fs = std::filesystem;
    const fs::path manifest_path = dir / "registry.json";
    std::ifstream in(manifest_path, std::ios::binary);
    if (!in) throw LoadError("missing registry manifest " + manifest_path.string());

    ordered_json manifest;
    try {
        in >> manifest;
    } catch (const nlohmann::json::exception& e) {
        throw LoadError("corrupt registry manifest " + manifest_path.string() + ": " + e.what());
    }

    const int canonical_size = manifest.value("canonical_size", 0);
    const double kernel_fraction = manifest.value("kernel_fraction", 0.0);
    if (canonical_size < 2 || !(kernel_fraction > 0.0) || kernel_fraction > 1.0) {
        throw LoadError("registry manifest has invalid geometry fields: " + manifest_path.string());
    }
    TemplateRegistry registry(canonical_size, kernel_fraction);
    if (!manifest.contains("entries") || !manifest["entries"].is_array()) {
        throw LoadError("registry manifest has no entry list: " + manifest_path.string());
    }

    for (const auto& item : manifest["entries"]) {
        const std::string label = item.value("label", "");
        const std::string file = item.value("file", "");
        const std::string checksum = item.value("checksum", "");
        if (label.empty() || file.empty()) {
            throw LoadError("registry entry with missing label or file in " + manifest_path.string());
        }

        std::ifstream pin(dir / file, std::ios::binary);
        if (!pin) throw LoadError("registry entry '" + label + "': cannot open " + (dir / file).string());
        std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(pin)),
                                        std::istreambuf_iterator<char>());
        if (crc32_hex(bytes) != checksum) {
            throw LoadError("registry entry '" + label + "': checksum mismatch for " + file);
        }

        GrayImage gray;
        try {
            gray = decode_pgm(bytes);
        } catch (const ParseError& e) {
            throw LoadError("registry entry '" + label + "': " + e.what());
        }
        if (gray.width != registry.canonical_size() || gray.height != registry.canonical_size()) {
            throw LoadError("registry entry '" + label + "': silhouette is " +
                            std::to_string(gray.width) + "x" + std::to_string(gray.height) +
                            ", expected canonical " + std::to_string(registry.canonical_size()));
        }
        BinaryImage canonical = binarize(gray, 127);
        CorrelationMap auto_map = autocorrelation_map(to_real(canonical), registry.kernel_fraction());
        registry.add({label, std::move(canonical), std::move(auto_map)});
    }
    return registry;
}

}  // namespace gestrec
