#pragma once

// Full generation pipeline: extraction -> panel inference -> layout ->
// composition -> poster.

#include <chrono>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "posterforge/composer.hpp"
#include "posterforge/config.hpp"
#include "posterforge/content_model.hpp"
#include "posterforge/layout.hpp"
#include "posterforge/model.hpp"
#include "posterforge/panel_model.hpp"
#include "posterforge/renderer.hpp"
#include "posterforge/summarizer.hpp"

namespace posterforge {

struct StageTiming {
    std::string stage;
    double seconds = 0.0;
};

struct GenerationResult {
    Poster poster;
    LayoutResult layout;
    std::vector<PanelContent> panels;
    std::vector<PanelAttributes> attributes;
    std::vector<StageTiming> timings;
    std::vector<std::string> warnings;
};

namespace detail {

class StageClock {
public:
    explicit StageClock(std::vector<StageTiming>& out) : out_(out) {}

    void lap(std::string stage) {
        const auto now = std::chrono::steady_clock::now();
        out_.push_back({std::move(stage), std::chrono::duration<double>(now - last_).count()});
        last_ = now;
    }

private:
    std::vector<StageTiming>& out_;
    std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

} // namespace detail

/// Area left for panels once the title strip is removed.
inline Rect panel_area(double header_fraction) {
    return {0.0, header_fraction, 1.0, 1.0 - header_fraction};
}

/// Panel i is composed with seed `seed + i`.
inline GenerationResult generate_poster(const DocumentContent& doc, const PosterModel& model,
                                        const Config& cfg, std::uint64_t seed) {
    GenerationResult res;
    detail::StageClock clock(res.timings);

    if (doc.sections.size() > cfg.layout.max_panels)
        throw LayoutError("document has " + std::to_string(doc.sections.size()) +
                          " sections but at most " + std::to_string(cfg.layout.max_panels) +
                          " panels are supported; merge sections before generating");

    const auto summaries = summarize_document(doc, cfg.summarizer);
    res.panels = build_panel_contents(doc, summaries);
    clock.lap("text extraction");

    for (const auto& p : res.panels)
        res.attributes.push_back(
            infer_panel_attributes(model.panel, p.text_ratio, p.graphic_ratio, cfg.panel));
    clock.lap("panel attribute inference");

    res.layout = generate_layout(res.attributes, panel_area(cfg.header_fraction), cfg.layout);
    clock.lap("panel layout generation");

    auto& poster = res.poster;
    poster.page_width_mm = cfg.page_width_mm;
    poster.page_height_mm = cfg.page_width_mm / doc.page_aspect;
    poster.title = doc.title;
    poster.authors = doc.authors;
    poster.header_fraction = cfg.header_fraction;
    poster.text = cfg.composer.text;
    const auto rects = tree_rects(res.layout.tree);
    for (std::size_t i = 0; i < res.panels.size(); ++i) {
        PanelInput in{static_cast<int>(i), rects[i], &res.panels[i], doc.page_aspect};
        auto comp = compose_panel(model.composition, in, seed + i, cfg.composer);
        const auto& title = doc.sections[i].title;
        if (comp.fallback)
            res.warnings.push_back("panel " + std::to_string(i) + " (" + title +
                                   "): no feasible sample, elements shrunk to fit");
        if (!comp.fits)
            res.warnings.push_back("panel " + std::to_string(i) + " (" + title +
                                   "): content exceeds panel height");
        poster.panels.push_back({title, rects[i], std::move(comp)});
    }
    clock.lap("composition within panel");
    return res;
}

} // namespace posterforge
