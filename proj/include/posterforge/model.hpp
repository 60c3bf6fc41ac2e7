#pragma once

// Combined model (panel + composition parameters): training from an annotated
// corpus and persistence as a versioned JSON file.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "posterforge/composer.hpp"
#include "posterforge/content_model.hpp"
#include "posterforge/error.hpp"
#include "posterforge/panel_model.hpp"

namespace posterforge {

struct PosterModel {
    PanelModel panel;
    CompositionModel composition;
};

inline constexpr const char* kModelFormat = "posterforge-model";
inline constexpr int kModelVersion = 1;

/// Annotated documents from every *.json file in `dir`, sorted by file name.
inline std::vector<AnnotatedDocument> load_corpus(const std::filesystem::path& dir) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir)) throw InputError("corpus directory not found: " + dir.string());
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    std::vector<AnnotatedDocument> docs;
    for (const auto& f : files) docs.push_back(load_annotated_document_file(f));
    for (std::size_t i = 0; i < docs.size(); ++i)
        for (std::size_t j = i + 1; j < docs.size(); ++j)
            if (docs[i].id == docs[j].id)
                throw InputError("duplicate document id in corpus: " + docs[i].id);
    return docs;
}

struct TrainingRows {
    std::vector<PanelSample> panels;
    std::vector<SizeSample> sizes;
    std::vector<PositionSample> positions;
};

inline void append_training_rows(const AnnotatedDocument& doc, TrainingRows& rows) {
    const auto contents = annotated_panel_contents(doc);
    for (std::size_t i = 0; i < contents.size(); ++i) {
        const auto& pc = contents[i];
        const auto& pa = doc.panels[i];
        rows.panels.push_back({pc.text_ratio, pc.graphic_ratio, pa.size(), pa.aspect()});
        for (std::size_t k = 0; k < pc.elements.size(); ++k) {
            const auto& el = pc.elements[k];
            const auto& ea = doc.elements[i][k];
            rows.sizes.push_back(
                {pa.size(), static_cast<double>(pc.text_length), el.size(), ea.width_ratio});
            rows.positions.push_back({pa.aspect(), el.size(), el.aspect(), ea.position});
        }
    }
}

inline TrainingRows training_rows(const std::vector<AnnotatedDocument>& docs) {
    TrainingRows rows;
    for (const auto& d : docs) append_training_rows(d, rows);
    return rows;
}

struct TrainingOptions {
    PanelModelOptions panel;
    ComposerOptions composer;
};

struct TrainingResult {
    PosterModel model;
    FitStatus position_status = FitStatus::Ok;
    double position_log_likelihood = 0.0;
    std::size_t panel_rows = 0;
    std::size_t element_rows = 0;
};

inline TrainingResult train_model(const TrainingRows& rows, const TrainingOptions& opt = {}) {
    TrainingResult r;
    r.model.panel = fit_panel_model(rows.panels, opt.panel);
    const auto size = fit_size_model(rows.sizes, opt.composer.sigma_floor);
    r.model.composition.size_weights = size.weights;
    r.model.composition.size_sigma = size.sigma;
    const auto pos = fit_position_model(rows.positions, opt.composer.softmax);
    r.model.composition.position_weights = pos.weights;
    r.position_status = pos.status;
    r.position_log_likelihood = pos.log_likelihood;
    r.panel_rows = rows.panels.size();
    r.element_rows = rows.sizes.size();
    return r;
}

inline nlohmann::json model_to_json(const PosterModel& m) {
    const auto& c = m.composition;
    return {{"format", kModelFormat},
            {"version", kModelVersion},
            {"panel",
             {{"size_weights", m.panel.size_weights},
              {"size_sigma", m.panel.size_sigma},
              {"aspect_weights", m.panel.aspect_weights},
              {"aspect_sigma", m.panel.aspect_sigma}}},
            {"composition",
             {{"size_weights", c.size_weights},
              {"size_sigma", c.size_sigma},
              {"position_weights",
               {{"left", c.position_weights[0]},
                {"center", c.position_weights[1]},
                {"right", c.position_weights[2]}}}}}};
}

inline PosterModel model_from_json(const nlohmann::json& j) {
    try {
        if (j.at("format").get<std::string>() != kModelFormat)
            throw ValidationError("$.format", "not a posterforge model file");
        if (j.at("version").get<int>() != kModelVersion)
            throw ValidationError("$.version", "unsupported model version");
        PosterModel m;
        const auto& p = j.at("panel");
        m.panel.size_weights = p.at("size_weights").get<Features<3>>();
        m.panel.size_sigma = p.at("size_sigma").get<double>();
        m.panel.aspect_weights = p.at("aspect_weights").get<Features<3>>();
        m.panel.aspect_sigma = p.at("aspect_sigma").get<double>();
        const auto& c = j.at("composition");
        m.composition.size_weights = c.at("size_weights").get<Features<4>>();
        m.composition.size_sigma = c.at("size_sigma").get<double>();
        const auto& pw = c.at("position_weights");
        m.composition.position_weights = {pw.at("left").get<Features<4>>(),
                                          pw.at("center").get<Features<4>>(),
                                          pw.at("right").get<Features<4>>()};
        if (!(m.panel.size_sigma > 0.0 && m.panel.aspect_sigma > 0.0 &&
              m.composition.size_sigma > 0.0))
            throw ValidationError("$", "model standard deviations must be positive");
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed model file: ") + e.what());
    }
}

inline void save_model(const PosterModel& m, const std::filesystem::path& p) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw InputError("cannot write " + p.string());
    out << model_to_json(m).dump(2) << '\n';
}

inline PosterModel load_model(const std::filesystem::path& p) {
    return model_from_json(detail::parse_json(detail::read_file(p)));
}

} // namespace posterforge
