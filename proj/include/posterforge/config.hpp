#pragma once

// Runtime configuration. Every field has a default; a JSON config file may
// override any subset:
//
//   {
//     "extraction": {"default_ratio": 0.2, "stopwords_path": "stop.txt",
//                    "damping": 0.85, "tolerance": 1e-6, "max_iterations": 100},
//     "panel":      {"sigma_floor": 1e-6, "size_min": 0.01,
//                    "aspect_min": 0.2, "aspect_max": 5.0},
//     "layout":     {"max_panels": 12},
//     "composer":   {"samples": 1000, "char_width": 0.006, "line_height": 0.012,
//                    "learning_rate": 0.1, "iterations": 500, "l2": 1e-4,
//                    "fallback_floor": 0.1},
//     "page":       {"width_mm": 841.0, "header_fraction": 0.1},
//     "seed": 0
//   }

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "posterforge/composer.hpp"
#include "posterforge/content_model.hpp"
#include "posterforge/error.hpp"
#include "posterforge/layout.hpp"
#include "posterforge/panel_model.hpp"
#include "posterforge/summarizer.hpp"

namespace posterforge {

struct Config {
    double default_extraction_ratio = kDefaultExtractionRatio;
    std::string stopwords_path;
    SummarizerOptions summarizer;
    PanelModelOptions panel;
    LayoutOptions layout;
    ComposerOptions composer;
    double page_width_mm = 841.0; // A0 portrait width
    double header_fraction = 0.1;
    std::uint64_t seed = 0;
};

namespace detail {

template <class T>
void read_opt(const nlohmann::json& obj, const char* key, T& out, const std::string& path) {
    auto it = obj.find(key);
    if (it == obj.end()) return;
    try {
        out = it->get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ValidationError(path + "." + key, "wrong type");
    }
}

inline void check(bool ok, const std::string& path, const char* msg) {
    if (!ok) throw ValidationError(path, msg);
}

inline std::set<std::string> read_stopwords(const std::filesystem::path& p) {
    std::ifstream in(p);
    if (!in) throw InputError("cannot open stopwords file " + p.string());
    std::set<std::string> words;
    for (std::string w; in >> w;) {
        for (auto& c : w) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        words.insert(w);
    }
    return words;
}

} // namespace detail

inline void validate(const Config& c) {
    using detail::check;
    check(c.default_extraction_ratio > 0.0 && c.default_extraction_ratio <= 1.0,
          "extraction.default_ratio", "must lie in (0, 1]");
    check(c.summarizer.damping > 0.0 && c.summarizer.damping < 1.0, "extraction.damping",
          "must lie in (0, 1)");
    check(c.summarizer.tolerance > 0.0, "extraction.tolerance", "must be positive");
    check(c.summarizer.max_iterations >= 1, "extraction.max_iterations", "must be >= 1");
    check(c.panel.sigma_floor > 0.0, "panel.sigma_floor", "must be positive");
    check(c.panel.size_min > 0.0 && c.panel.size_min < 1.0, "panel.size_min", "must lie in (0, 1)");
    check(c.panel.aspect_min > 0.0 && c.panel.aspect_min < c.panel.aspect_max, "panel.aspect_min",
          "must be positive and below aspect_max");
    check(c.layout.max_panels >= 1, "layout.max_panels", "must be >= 1");
    check(c.composer.samples >= 1, "composer.samples", "must be >= 1");
    check(c.composer.text.char_width > 0.0, "composer.char_width", "must be positive");
    check(c.composer.text.line_height > 0.0, "composer.line_height", "must be positive");
    check(c.composer.softmax.learning_rate > 0.0, "composer.learning_rate", "must be positive");
    check(c.composer.softmax.iterations >= 0, "composer.iterations", "must be >= 0");
    check(c.composer.softmax.l2 >= 0.0, "composer.l2", "must be nonnegative");
    check(c.composer.fallback_floor > 0.0 && c.composer.fallback_floor <= 1.0,
          "composer.fallback_floor", "must lie in (0, 1]");
    check(c.page_width_mm > 0.0, "page.width_mm", "must be positive");
    check(c.header_fraction >= 0.0 && c.header_fraction < 1.0, "page.header_fraction",
          "must lie in [0, 1)");
}

inline Config config_from_json(const nlohmann::json& j) {
    Config c;
    if (!j.is_object()) throw ValidationError("$", "config must be an object");
    if (auto it = j.find("extraction"); it != j.end()) {
        detail::read_opt(*it, "default_ratio", c.default_extraction_ratio, "extraction");
        detail::read_opt(*it, "stopwords_path", c.stopwords_path, "extraction");
        detail::read_opt(*it, "damping", c.summarizer.damping, "extraction");
        detail::read_opt(*it, "tolerance", c.summarizer.tolerance, "extraction");
        detail::read_opt(*it, "max_iterations", c.summarizer.max_iterations, "extraction");
    }
    if (auto it = j.find("panel"); it != j.end()) {
        detail::read_opt(*it, "sigma_floor", c.panel.sigma_floor, "panel");
        detail::read_opt(*it, "size_min", c.panel.size_min, "panel");
        detail::read_opt(*it, "aspect_min", c.panel.aspect_min, "panel");
        detail::read_opt(*it, "aspect_max", c.panel.aspect_max, "panel");
        c.composer.sigma_floor = c.panel.sigma_floor;
    }
    if (auto it = j.find("layout"); it != j.end())
        detail::read_opt(*it, "max_panels", c.layout.max_panels, "layout");
    if (auto it = j.find("composer"); it != j.end()) {
        detail::read_opt(*it, "samples", c.composer.samples, "composer");
        detail::read_opt(*it, "char_width", c.composer.text.char_width, "composer");
        detail::read_opt(*it, "line_height", c.composer.text.line_height, "composer");
        detail::read_opt(*it, "learning_rate", c.composer.softmax.learning_rate, "composer");
        detail::read_opt(*it, "iterations", c.composer.softmax.iterations, "composer");
        detail::read_opt(*it, "l2", c.composer.softmax.l2, "composer");
        detail::read_opt(*it, "fallback_floor", c.composer.fallback_floor, "composer");
    }
    if (auto it = j.find("page"); it != j.end()) {
        detail::read_opt(*it, "width_mm", c.page_width_mm, "page");
        detail::read_opt(*it, "header_fraction", c.header_fraction, "page");
    }
    detail::read_opt(j, "seed", c.seed, "$");
    validate(c);
    if (!c.stopwords_path.empty()) c.summarizer.stopwords = detail::read_stopwords(c.stopwords_path);
    return c;
}

inline Config load_config(const std::filesystem::path& p) {
    return config_from_json(detail::parse_json(detail::read_file(p)));
}

} // namespace posterforge
