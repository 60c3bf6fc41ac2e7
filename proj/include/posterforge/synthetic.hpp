#pragma once

// Seeded generator of annotated poster/paper pairs drawn from known ("planted")
// model parameters. Used for training smoke runs, evaluation experiments and
// tests, since no real annotated corpus ships with the project.

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "posterforge/composer.hpp"
#include "posterforge/content_model.hpp"
#include "posterforge/model.hpp"

namespace posterforge {

struct PlantedModel {
    PanelModel panel{{0.5, 0.3, 0.02}, 0.01, {1.5, -0.8, 0.9}, 0.05};
    CompositionModel composition{{1.2, 0.0002, 0.8, 0.3},
                                 0.02,
                                 {{{-1.0, 0.0, 1.5, -1.0}, {0.0, 0.0, 0.0, 0.0}, {1.0, 0.0, -1.5, -0.5}}}};
};

struct SyntheticOptions {
    std::size_t min_sections = 4;
    std::size_t max_sections = 8;
    std::size_t min_sentences = 3;
    std::size_t max_sentences = 9;
    std::size_t max_elements = 2; // per section
    double page_aspect = 841.0 / 1189.0;
};

namespace detail {

inline const std::vector<std::string>& synthetic_vocabulary() {
    static const std::vector<std::string> words = {
        "model",     "data",      "panel",    "layout",   "graph",     "method",   "result",
        "image",     "network",   "learning", "training", "inference", "sample",   "feature",
        "structure", "design",    "poster",   "figure",   "table",     "section",  "text",
        "ratio",     "size",      "shape",    "aspect",   "element",   "gaussian", "linear",
        "estimate",  "parameter", "error",    "baseline", "user",      "study",    "quality",
        "readable",  "aesthetic", "balance",  "space",    "column",    "row",      "tree",
        "split",     "recursive", "optimal",  "search",   "loss",      "score",    "rank",
        "sentence",  "summary",   "content",  "extract",  "compose",   "position", "width",
        "height",    "efficient", "robust",   "novel"};
    return words;
}

inline std::string synthetic_sentence(std::mt19937_64& rng) {
    const auto& vocab = synthetic_vocabulary();
    std::uniform_int_distribution<std::size_t> len(6, 16), pick(0, vocab.size() - 1);
    std::string s;
    const auto n = len(rng);
    for (std::size_t i = 0; i < n; ++i) {
        if (i) s += ' ';
        s += vocab[pick(rng)];
    }
    s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
    return s + ".";
}

} // namespace detail

/// One annotated document. Panel sizes and aspects, element widths and
/// anchors are sampled from `planted` given the document's extracted
/// features; panel geometry is w_p = sqrt(s_p r_p), h_p = sqrt(s_p / r_p).
inline AnnotatedDocument synthetic_document(const std::string& id, std::mt19937_64& rng,
                                            const PlantedModel& planted = {},
                                            const SyntheticOptions& opt = {}) {
    std::uniform_int_distribution<std::size_t> n_sec(opt.min_sections, opt.max_sections);
    std::uniform_int_distribution<std::size_t> n_sent(opt.min_sentences, opt.max_sentences);
    std::uniform_int_distribution<std::size_t> n_el(0, opt.max_elements);
    std::uniform_real_distribution<double> dim(0.2, 0.9);
    std::normal_distribution<double> noise(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    AnnotatedDocument a;
    a.id = id;
    a.content.title = "Synthetic paper " + id;
    a.content.authors = "Generated";
    a.content.page_aspect = opt.page_aspect;
    const auto k = n_sec(rng);
    for (std::size_t i = 0; i < k; ++i) {
        Section s;
        s.title = "Section " + std::to_string(i + 1);
        const auto m = n_sent(rng);
        for (std::size_t j = 0; j < m; ++j) s.sentences.push_back(detail::synthetic_sentence(rng));
        const auto e = n_el(rng);
        for (std::size_t j = 0; j < e; ++j) {
            GraphicalElement g;
            g.id = id + "-fig" + std::to_string(i + 1) + "-" + std::to_string(j + 1);
            g.source_width = dim(rng);
            g.source_height = dim(rng) * 0.6;
            g.section_index = static_cast<int>(i);
            s.elements.push_back(g);
        }
        a.content.sections.push_back(std::move(s));
    }
    // Guarantee at least one element so g_p is defined.
    if (std::all_of(a.content.sections.begin(), a.content.sections.end(),
                    [](const Section& s) { return s.elements.empty(); }))
        a.content.sections[0].elements.push_back({id + "-fig1-1", 0.5, 0.3, 0, ""});

    const auto panels = annotated_panel_contents(a);
    for (const auto& p : panels) {
        const auto mean = panel_means(planted.panel, p.text_ratio, p.graphic_ratio);
        const double sp = std::clamp(mean.size + planted.panel.size_sigma * noise(rng), 0.01, 0.6);
        const double rp =
            std::clamp(mean.aspect + planted.panel.aspect_sigma * noise(rng), 0.3, 3.0);
        a.panels.push_back({std::min(std::sqrt(sp * rp), 1.0), std::min(std::sqrt(sp / rp), 1.0)});

        const auto& pa = a.panels.back();
        std::vector<ElementAnnotation> els;
        for (const auto& g : p.elements) {
            const double u_mean = dot(planted.composition.size_weights,
                                      size_features(pa.size(), static_cast<double>(p.text_length),
                                                    g.size()));
            ElementAnnotation ea;
            ea.width_ratio =
                std::clamp(u_mean + planted.composition.size_sigma * noise(rng), 0.05, 1.0);
            const auto probs =
                position_probabilities(planted.composition.position_weights,
                                       position_features(pa.aspect(), g.size(), g.aspect()));
            const double v = unit(rng);
            ea.position = v < probs[0]              ? HPosition::Left
                          : v < probs[0] + probs[1] ? HPosition::Center
                                                    : HPosition::Right;
            els.push_back(ea);
        }
        a.elements.push_back(std::move(els));
    }
    return a;
}

/// `count` documents named doc-00, doc-01, ...
inline std::vector<AnnotatedDocument> synthetic_corpus(std::size_t count, std::uint64_t seed,
                                                       const PlantedModel& planted = {},
                                                       const SyntheticOptions& opt = {}) {
    std::mt19937_64 rng(seed);
    std::vector<AnnotatedDocument> out;
    for (std::size_t i = 0; i < count; ++i) {
        char id[32];
        std::snprintf(id, sizeof id, "doc-%02zu", i);
        out.push_back(synthetic_document(id, rng, planted, opt));
    }
    return out;
}

} // namespace posterforge
