#pragma once

// Document and poster data model: input loading, validation and per-panel
// feature extraction (text length, text ratio, graphical ratio).

#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "posterforge/error.hpp"

namespace posterforge {

/// Horizontal anchor of a graphical element inside its panel.
enum class HPosition { Left = 0, Center = 1, Right = 2 };

inline constexpr std::size_t kNumPositions = 3;

inline std::string_view to_string(HPosition h) {
    switch (h) {
    case HPosition::Left: return "left";
    case HPosition::Center: return "center";
    case HPosition::Right: return "right";
    }
    return "center";
}

inline std::optional<HPosition> parse_hposition(std::string_view s) {
    if (s == "left") return HPosition::Left;
    if (s == "center") return HPosition::Center;
    if (s == "right") return HPosition::Right;
    return std::nullopt;
}

/// A figure or table taken from the source paper. Dimensions are fractions
/// of the source page width and height.
struct GraphicalElement {
    std::string id;
    double source_width = 0.0;
    double source_height = 0.0;
    int section_index = 0;
    std::string path; // optional image file, rendered verbatim when present

    double size() const { return source_width * source_height; }
    double aspect() const { return source_width / source_height; }
};

inline constexpr double kDefaultExtractionRatio = 0.2;

struct Section {
    std::string title;
    std::vector<std::string> sentences;
    double extraction_ratio = kDefaultExtractionRatio;
    std::vector<GraphicalElement> elements;
};

struct DocumentContent {
    std::string title;
    std::string authors;
    std::vector<Section> sections;
    double page_aspect = 1.0; // poster physical width / height
};

/// Features of one panel plus the content placed in it. Panel i always holds
/// section i.
struct PanelContent {
    int section_index = 0;
    std::vector<std::string> text_items;
    std::vector<GraphicalElement> elements;
    long long text_length = 0; // l_p, in characters
    double text_ratio = 0.0;   // t_p
    double graphic_ratio = 0.0; // g_p
};

/// Annotated poster panel geometry, fractions of poster width / height.
struct PanelAnnotation {
    double width = 0.0;
    double height = 0.0;

    double size() const { return width * height; }
    double aspect() const { return width / height; }
};

struct ElementAnnotation {
    double width_ratio = 0.0; // u_g
    HPosition position = HPosition::Center;
};

/// One training document: content plus the layout of its human-made poster.
/// `panels[i]` annotates section i; `elements[i][j]` annotates element j of
/// section i.
struct AnnotatedDocument {
    std::string id;
    DocumentContent content;
    std::vector<PanelAnnotation> panels;
    std::vector<std::vector<ElementAnnotation>> elements;
};

/// Number of Unicode code points in a UTF-8 string. Continuation bytes are
/// not counted; invalid sequences count byte by byte.
inline long long utf8_length(std::string_view s) {
    long long n = 0;
    for (unsigned char c : s)
        if ((c & 0xC0u) != 0x80u) ++n;
    return n;
}

namespace detail {

using nlohmann::json;

inline const json& require(const json& obj, const char* key, const std::string& path) {
    if (!obj.is_object()) throw ValidationError(path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) throw ValidationError(path + "." + key, "missing required field");
    return *it;
}

inline double require_number(const json& obj, const char* key, const std::string& path) {
    const json& v = require(obj, key, path);
    if (!v.is_number()) throw ValidationError(path + "." + key, "expected a number");
    double x = v.get<double>();
    if (!std::isfinite(x)) throw ValidationError(path + "." + key, "must be finite");
    return x;
}

inline std::string optional_string(const json& obj, const char* key, const std::string& path) {
    auto it = obj.find(key);
    if (it == obj.end()) return {};
    if (!it->is_string()) throw ValidationError(path + "." + key, "expected a string");
    return it->get<std::string>();
}

inline GraphicalElement parse_element(const json& j, int section_index, const std::string& path) {
    GraphicalElement e;
    const json& id = require(j, "id", path);
    if (!id.is_string() || id.get<std::string>().empty())
        throw ValidationError(path + ".id", "expected a non-empty string");
    e.id = id.get<std::string>();
    e.source_width = require_number(j, "source_width", path);
    e.source_height = require_number(j, "source_height", path);
    if (!(e.source_width > 0.0 && e.source_width <= 1.0))
        throw ValidationError(path + ".source_width", "must lie in (0, 1]");
    if (!(e.source_height > 0.0 && e.source_height <= 1.0))
        throw ValidationError(path + ".source_height", "must lie in (0, 1]");
    if (auto it = j.find("section_index"); it != j.end()) {
        if (!it->is_number_integer() || it->get<int>() != section_index)
            throw ValidationError(path + ".section_index",
                                  "must equal the enclosing section's index " +
                                      std::to_string(section_index));
    }
    e.section_index = section_index;
    e.path = optional_string(j, "path", path);
    return e;
}

inline Section parse_section(const json& j, int index, const std::string& path,
                             double default_ratio) {
    Section s;
    s.extraction_ratio = default_ratio;
    if (!j.is_object()) throw ValidationError(path, "expected an object");
    s.title = optional_string(j, "title", path);
    if (auto it = j.find("sentences"); it != j.end()) {
        if (!it->is_array()) throw ValidationError(path + ".sentences", "expected an array");
        for (std::size_t i = 0; i < it->size(); ++i) {
            const json& sj = (*it)[i];
            if (!sj.is_string())
                throw ValidationError(path + ".sentences[" + std::to_string(i) + "]",
                                      "expected a string");
            s.sentences.push_back(sj.get<std::string>());
        }
    }
    if (j.contains("extraction_ratio")) {
        s.extraction_ratio = require_number(j, "extraction_ratio", path);
        if (!(s.extraction_ratio > 0.0 && s.extraction_ratio <= 1.0))
            throw ValidationError(path + ".extraction_ratio", "must lie in (0, 1]");
    }
    if (auto it = j.find("elements"); it != j.end()) {
        if (!it->is_array()) throw ValidationError(path + ".elements", "expected an array");
        for (std::size_t i = 0; i < it->size(); ++i)
            s.elements.push_back(
                parse_element((*it)[i], index, path + ".elements[" + std::to_string(i) + "]"));
    }
    if (s.sentences.empty() && s.elements.empty())
        throw ValidationError(path, "section needs at least one sentence or element");
    return s;
}

inline json parse_json(std::string_view bytes) {
    try {
        return json::parse(bytes.begin(), bytes.end());
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed document: ") + e.what());
    }
}

inline std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw InputError("cannot open " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace detail

/// Builds a validated DocumentContent from an already-parsed JSON tree.
/// Sections without an extraction_ratio get `default_ratio`.
inline DocumentContent parse_document(const nlohmann::json& j,
                                      double default_ratio = kDefaultExtractionRatio) {
    DocumentContent doc;
    if (!j.is_object()) throw ValidationError("$", "expected an object");
    doc.title = detail::optional_string(j, "title", "$");
    doc.authors = detail::optional_string(j, "authors", "$");
    if (j.contains("page_aspect")) {
        doc.page_aspect = detail::require_number(j, "page_aspect", "$");
        if (!(doc.page_aspect > 0.0)) throw ValidationError("$.page_aspect", "must be positive");
    }
    const auto& secs = detail::require(j, "sections", "$");
    if (!secs.is_array() || secs.empty())
        throw ValidationError("$.sections", "expected a non-empty array");
    for (std::size_t i = 0; i < secs.size(); ++i)
        doc.sections.push_back(detail::parse_section(secs[i], static_cast<int>(i),
                                                     "$.sections[" + std::to_string(i) + "]",
                                                     default_ratio));
    return doc;
}

inline DocumentContent load_document(std::string_view bytes,
                                     double default_ratio = kDefaultExtractionRatio) {
    return parse_document(detail::parse_json(bytes), default_ratio);
}

inline DocumentContent load_document_file(const std::filesystem::path& p,
                                          double default_ratio = kDefaultExtractionRatio) {
    return load_document(detail::read_file(p), default_ratio);
}

/// Parses the training annotation format: a document whose sections carry a
/// "panel": {"w_p", "h_p"} object and whose elements carry "u_g" and "h_g".
inline AnnotatedDocument load_annotated_document(std::string_view bytes, std::string fallback_id) {
    const auto j = detail::parse_json(bytes);
    AnnotatedDocument a;
    a.content = parse_document(j);
    a.id = detail::optional_string(j, "id", "$");
    if (a.id.empty()) a.id = std::move(fallback_id);
    const auto& secs = j.at("sections");
    for (std::size_t i = 0; i < secs.size(); ++i) {
        const std::string path = "$.sections[" + std::to_string(i) + "]";
        const auto& pj = detail::require(secs[i], "panel", path);
        PanelAnnotation pa;
        pa.width = detail::require_number(pj, "w_p", path + ".panel");
        pa.height = detail::require_number(pj, "h_p", path + ".panel");
        if (!(pa.width > 0.0 && pa.width <= 1.0))
            throw ValidationError(path + ".panel.w_p", "must lie in (0, 1]");
        if (!(pa.height > 0.0 && pa.height <= 1.0))
            throw ValidationError(path + ".panel.h_p", "must lie in (0, 1]");
        a.panels.push_back(pa);

        std::vector<ElementAnnotation> ea;
        if (auto it = secs[i].find("elements"); it != secs[i].end()) {
            for (std::size_t k = 0; k < it->size(); ++k) {
                const std::string epath = path + ".elements[" + std::to_string(k) + "]";
                ElementAnnotation e;
                e.width_ratio = detail::require_number((*it)[k], "u_g", epath);
                if (!(e.width_ratio > 0.0 && e.width_ratio <= 1.0))
                    throw ValidationError(epath + ".u_g", "must lie in (0, 1]");
                const auto& hj = detail::require((*it)[k], "h_g", epath);
                auto h = hj.is_string() ? parse_hposition(hj.get<std::string>()) : std::nullopt;
                if (!h) throw ValidationError(epath + ".h_g", "expected left, center or right");
                e.position = *h;
                ea.push_back(e);
            }
        }
        a.elements.push_back(std::move(ea));
    }
    return a;
}

inline AnnotatedDocument load_annotated_document_file(const std::filesystem::path& p) {
    try {
        return load_annotated_document(detail::read_file(p), p.stem().string());
    } catch (const ValidationError& e) {
        throw ValidationError(p.filename().string() + ":" + e.path(), e.message());
    } catch (const InputError& e) {
        throw InputError(p.filename().string() + ": " + e.what());
    }
}

inline nlohmann::json document_to_json(const DocumentContent& doc) {
    nlohmann::json secs = nlohmann::json::array();
    for (const auto& s : doc.sections) {
        nlohmann::json els = nlohmann::json::array();
        for (const auto& e : s.elements) {
            nlohmann::json ej = {{"id", e.id},
                                 {"source_width", e.source_width},
                                 {"source_height", e.source_height}};
            if (!e.path.empty()) ej["path"] = e.path;
            els.push_back(std::move(ej));
        }
        secs.push_back({{"title", s.title},
                        {"sentences", s.sentences},
                        {"extraction_ratio", s.extraction_ratio},
                        {"elements", std::move(els)}});
    }
    return {{"title", doc.title},
            {"authors", doc.authors},
            {"page_aspect", doc.page_aspect},
            {"sections", std::move(secs)}};
}

/// Training annotation format; inverse of load_annotated_document.
inline nlohmann::json annotated_to_json(const AnnotatedDocument& a) {
    auto j = document_to_json(a.content);
    j["id"] = a.id;
    auto& secs = j["sections"];
    for (std::size_t i = 0; i < secs.size(); ++i) {
        secs[i]["panel"] = {{"w_p", a.panels[i].width}, {"h_p", a.panels[i].height}};
        for (std::size_t k = 0; k < secs[i]["elements"].size(); ++k) {
            secs[i]["elements"][k]["u_g"] = a.elements[i][k].width_ratio;
            secs[i]["elements"][k]["h_g"] = std::string(to_string(a.elements[i][k].position));
        }
    }
    return j;
}

/// Computes l_p, t_p and g_p for one panel per section. `summaries[i]` is the
/// text selected for section i.
inline std::vector<PanelContent> build_panel_contents(
    const DocumentContent& doc, const std::vector<std::vector<std::string>>& summaries) {
    if (summaries.size() != doc.sections.size())
        throw InputError("expected one summary per section (" +
                         std::to_string(doc.sections.size()) + "), got " +
                         std::to_string(summaries.size()));

    std::vector<PanelContent> panels(doc.sections.size());
    long long total_text = 0;
    double total_graphic = 0.0;
    for (std::size_t i = 0; i < panels.size(); ++i) {
        PanelContent& p = panels[i];
        p.section_index = static_cast<int>(i);
        p.text_items = summaries[i];
        p.elements = doc.sections[i].elements;
        for (const auto& s : p.text_items) p.text_length += utf8_length(s);
        total_text += p.text_length;
        for (const auto& e : p.elements) total_graphic += e.size();
    }
    if (total_text == 0 && total_graphic == 0.0)
        throw InputError("empty document: no text and no graphical elements");

    for (auto& p : panels) {
        if (total_text > 0)
            p.text_ratio = static_cast<double>(p.text_length) / static_cast<double>(total_text);
        if (total_graphic > 0.0) {
            double g = 0.0;
            for (const auto& e : p.elements) g += e.size();
            p.graphic_ratio = g / total_graphic;
        }
    }
    return panels;
}

/// Panel contents of an annotated document, using every sentence of each
/// section as the panel text.
inline std::vector<PanelContent> annotated_panel_contents(const AnnotatedDocument& a) {
    std::vector<std::vector<std::string>> text;
    for (const auto& s : a.content.sections) text.push_back(s.sentences);
    return build_panel_contents(a.content, text);
}

} // namespace posterforge
