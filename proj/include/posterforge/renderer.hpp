#pragma once

// Serializes a resolved poster as standalone SVG 1.1 and as LaTeX source for
// the beamerposter class. Page units are millimetres in both outputs; every
// number is printed with six decimals so identical posters give identical
// bytes.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "posterforge/composer.hpp"
#include "posterforge/content_model.hpp"
#include "posterforge/layout.hpp"

namespace posterforge {

struct RenderStyle {
    double padding = 0.02; // of panel width, applied on every side
    std::string background = "#ffffff";
    std::string header_fill = "#1f3a5f";
    std::string header_text = "#ffffff";
    std::string panel_border = "#1f3a5f";
    std::string panel_title = "#1f3a5f";
    std::string text = "#222222";
    std::string placeholder = "#d9d9d9";
};

struct PosterPanel {
    std::string title;
    Rect rect; // page fractions
    PanelComposition composition;
};

struct Poster {
    double page_width_mm = 841.0;
    double page_height_mm = 1189.0;
    std::string title;
    std::string authors;
    double header_fraction = 0.1; // of page height
    TextMetrics text;
    std::vector<PosterPanel> panels;
    RenderStyle style;
};

inline std::string fmt6(double v) {
    if (v == 0.0) v = 0.0; // no "-0.000000"
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

inline std::string xml_escape(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        case '\'': out += "&apos;"; break;
        default: out += c;
        }
    }
    return out;
}

inline std::string latex_escape(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
        case '\\': out += "\\textbackslash{}"; break;
        case '&': out += "\\&"; break;
        case '%': out += "\\%"; break;
        case '$': out += "\\$"; break;
        case '#': out += "\\#"; break;
        case '_': out += "\\_"; break;
        case '{': out += "\\{"; break;
        case '}': out += "\\}"; break;
        case '~': out += "\\textasciitilde{}"; break;
        case '^': out += "\\textasciicircum{}"; break;
        default: out += c;
        }
    }
    return out;
}

/// Greedy word wrap to at most `width` code points per line (long words are
/// kept whole on their own line).
inline std::vector<std::string> wrap_text(std::string_view text, std::size_t width) {
    std::vector<std::string> lines;
    std::string line;
    std::size_t pos = 0;
    width = std::max<std::size_t>(width, 1);
    while (pos < text.size()) {
        while (pos < text.size() && text[pos] == ' ') ++pos;
        const std::size_t end = std::min(text.find(' ', pos), text.size());
        if (end == pos) break;
        std::string_view word = text.substr(pos, end - pos);
        pos = end;
        const auto need = static_cast<std::size_t>(utf8_length(line) + (line.empty() ? 0 : 1) +
                                                   utf8_length(word));
        if (!line.empty() && need > width) {
            lines.push_back(std::move(line));
            line.clear();
        }
        if (!line.empty()) line += ' ';
        line += word;
    }
    if (!line.empty()) lines.push_back(std::move(line));
    return lines;
}

/// Panel geometry in millimetres.
struct PanelBox {
    double x, y, w, h, pad;
    double inner_w() const { return w - 2.0 * pad; }
};

inline PanelBox panel_box(const Poster& p, const Rect& r) {
    PanelBox b{r.x * p.page_width_mm, r.y * p.page_height_mm, r.w * p.page_width_mm,
               r.h * p.page_height_mm, 0.0};
    b.pad = p.style.padding * b.w;
    return b;
}

/// Element width and left edge in millimetres. The width is u_g of the full
/// panel width, capped at the padded inner width.
inline std::pair<double, double> element_span(const PanelBox& b, const ElementPlacement& e) {
    const double width = std::min(e.width_ratio * b.w, b.inner_w());
    double x = b.x + (b.w - width) / 2.0;
    if (e.position == HPosition::Left) x = b.x + b.pad;
    if (e.position == HPosition::Right) x = b.x + b.w - b.pad - width;
    return {x, width};
}

inline std::string render_svg(const Poster& p) {
    const double W = p.page_width_mm, H = p.page_height_mm;
    const double line_h = p.text.line_height * H;
    // Average sans-serif advance is about 0.55 em; keep glyphs inside the
    // character cell the wrap width assumes.
    constexpr double kAdvance = 0.55;
    const double font = std::min(0.8 * line_h, p.text.char_width * W / kAdvance);
    std::string s;
    s += "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n";
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" xmlns:xlink=\"http://www.w3.org/1999/xlink\" "
         "version=\"1.1\" width=\"" + fmt6(W) + "mm\" height=\"" + fmt6(H) +
         "mm\" viewBox=\"0 0 " + fmt6(W) + " " + fmt6(H) + "\">\n";
    s += "<rect class=\"background\" x=\"0\" y=\"0\" width=\"" + fmt6(W) + "\" height=\"" +
         fmt6(H) + "\" fill=\"" + p.style.background + "\"/>\n";

    const double hh = p.header_fraction * H;
    if (hh > 0.0) {
        const double title_chars = std::max<double>(1.0, static_cast<double>(utf8_length(p.title)));
        const double title_font = std::min(hh * 0.3, 0.9 * W / (kAdvance * title_chars));
        s += "<g class=\"header\">\n";
        s += "<rect x=\"0\" y=\"0\" width=\"" + fmt6(W) + "\" height=\"" + fmt6(hh) +
             "\" fill=\"" + p.style.header_fill + "\"/>\n";
        s += "<text x=\"" + fmt6(W / 2) + "\" y=\"" + fmt6(hh * 0.45) +
             "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"" +
             fmt6(title_font) + "\" fill=\"" + p.style.header_text + "\">" + xml_escape(p.title) + "</text>\n";
        s += "<text x=\"" + fmt6(W / 2) + "\" y=\"" + fmt6(hh * 0.8) +
             "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"" +
             fmt6(hh * 0.15) + "\" fill=\"" + p.style.header_text + "\">" +
             xml_escape(p.authors) + "</text>\n";
        s += "</g>\n";
    }

    for (std::size_t i = 0; i < p.panels.size(); ++i) {
        const auto& panel = p.panels[i];
        const auto b = panel_box(p, panel.rect);
        const auto chars = static_cast<std::size_t>(
            std::max(1.0, std::floor(b.inner_w() / (p.text.char_width * W))));
        s += "<g class=\"panel\" id=\"panel-" + std::to_string(i) + "\">\n";
        s += "<rect class=\"panel-border\" x=\"" + fmt6(b.x) + "\" y=\"" + fmt6(b.y) +
             "\" width=\"" + fmt6(b.w) + "\" height=\"" + fmt6(b.h) + "\" fill=\"none\" stroke=\"" +
             p.style.panel_border + "\" stroke-width=\"" + fmt6(b.pad * 0.25) + "\"/>\n";
        double cy = b.y + b.pad;
        const auto title_chars = static_cast<std::size_t>(static_cast<double>(chars) / 1.25);
        for (const auto& line : wrap_text(panel.title, title_chars)) {
            cy += 1.25 * line_h;
            s += "<text class=\"panel-title\" x=\"" + fmt6(b.x + b.pad) + "\" y=\"" + fmt6(cy) +
                 "\" font-family=\"sans-serif\" font-weight=\"bold\" font-size=\"" +
                 fmt6(font * 1.25) + "\" fill=\"" + p.style.panel_title + "\">" +
                 xml_escape(line) + "</text>\n";
        }
        cy += 0.5 * line_h;
        for (const auto& block : panel.composition.blocks) {
            if (const auto* t = std::get_if<TextBlock>(&block)) {
                for (const auto& line : wrap_text(t->text, chars)) {
                    cy += line_h;
                    s += "<text class=\"panel-text\" x=\"" + fmt6(b.x + b.pad) + "\" y=\"" +
                         fmt6(cy) + "\" font-family=\"sans-serif\" font-size=\"" + fmt6(font) +
                         "\" fill=\"" + p.style.text + "\">" + xml_escape(line) + "</text>\n";
                }
                continue;
            }
            const auto& e = std::get<ElementPlacement>(block);
            const auto [ex, ew] = element_span(b, e);
            const double eh = ew / e.element_aspect;
            const double ey = cy + 0.25 * line_h;
            s += "<g class=\"element\" id=\"element-" + xml_escape(e.element_id) + "\">\n";
            if (!e.path.empty() && std::filesystem::exists(e.path)) {
                s += "<image x=\"" + fmt6(ex) + "\" y=\"" + fmt6(ey) + "\" width=\"" + fmt6(ew) +
                     "\" height=\"" + fmt6(eh) + "\" xlink:href=\"" + xml_escape(e.path) +
                     "\" preserveAspectRatio=\"none\"/>\n";
            } else {
                s += "<rect class=\"element-placeholder\" x=\"" + fmt6(ex) + "\" y=\"" + fmt6(ey) +
                     "\" width=\"" + fmt6(ew) + "\" height=\"" + fmt6(eh) + "\" fill=\"" +
                     p.style.placeholder + "\" stroke=\"" + p.style.panel_border + "\"/>\n";
                s += "<text x=\"" + fmt6(ex + ew / 2) + "\" y=\"" + fmt6(ey + eh / 2) +
                     "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"" +
                     fmt6(font) + "\" fill=\"" + p.style.text + "\">" + xml_escape(e.element_id) +
                     "</text>\n";
            }
            s += "</g>\n";
            cy = ey + eh;
        }
        s += "</g>\n";
    }
    s += "</svg>\n";
    return s;
}

/// beamerposter source. Panels become absolutely positioned textblocks (one
/// per panel, in read order) whose origin and width are the panel rect in
/// millimetres.
inline std::string render_beamerposter(const Poster& p) {
    const double W = p.page_width_mm, H = p.page_height_mm;
    std::string s;
    s += "\\documentclass[final]{beamer}\n";
    s += "\\usepackage[orientation=" + std::string(W > H ? "landscape" : "portrait") +
         ",size=custom,width=" + fmt6(W / 10.0) + ",height=" + fmt6(H / 10.0) +
         ",scale=1.0]{beamerposter}\n";
    s += "\\usepackage[absolute,overlay]{textpos}\n";
    s += "\\usepackage{graphicx}\n";
    s += "\\usepackage[utf8]{inputenc}\n";
    s += "\\setlength{\\TPHorizModule}{1mm}\n";
    s += "\\setlength{\\TPVertModule}{1mm}\n";
    s += "\\setbeamertemplate{navigation symbols}{}\n";
    s += "\\begin{document}\n";
    s += "\\begin{frame}[t]\n";
    if (p.header_fraction > 0.0) {
        s += "\\begin{textblock}{" + fmt6(W) + "}(0.000000,0.000000)\n";
        s += "\\centering\\vspace{" + fmt6(p.header_fraction * H * 0.2) + "mm}\n";
        s += "{\\Huge\\bfseries " + latex_escape(p.title) + "}\\\\[1ex]\n";
        s += "{\\Large " + latex_escape(p.authors) + "}\n";
        s += "\\end{textblock}\n";
    }
    for (std::size_t i = 0; i < p.panels.size(); ++i) {
        const auto& panel = p.panels[i];
        const auto b = panel_box(p, panel.rect);
        s += "% panel " + std::to_string(i) + "\n";
        s += "\\begin{textblock}{" + fmt6(b.w) + "}(" + fmt6(b.x) + "," + fmt6(b.y) + ")\n";
        s += "\\hspace*{" + fmt6(b.pad) + "mm}\\begin{minipage}[t]{" + fmt6(b.inner_w()) +
             "mm}\n";
        s += "\\begin{block}{" + latex_escape(panel.title) + "}\n";
        bool in_list = false;
        for (const auto& block : panel.composition.blocks) {
            if (const auto* t = std::get_if<TextBlock>(&block)) {
                if (!in_list) s += "\\begin{itemize}\n";
                in_list = true;
                s += "\\item " + latex_escape(t->text) + "\n";
                continue;
            }
            if (in_list) s += "\\end{itemize}\n";
            in_list = false;
            const auto& e = std::get<ElementPlacement>(block);
            const char* env = e.position == HPosition::Left    ? "flushleft"
                              : e.position == HPosition::Right ? "flushright"
                                                               : "center";
            const double frac = std::min(e.width_ratio * b.w, b.inner_w()) / b.inner_w();
            const std::string width = fmt6(frac) + "\\linewidth";
            s += "\\begin{" + std::string(env) + "}\n";
            s += "\\IfFileExists{" + e.path + "}{\\includegraphics[width=" + width + "]{" +
                 e.path + "}}{\\fbox{\\parbox[c][" + fmt6(frac / e.element_aspect) +
                 "\\linewidth][c]{" + width + "}{\\centering " + latex_escape(e.element_id) +
                 "}}}\n";
            s += "\\end{" + std::string(env) + "}\n";
        }
        if (in_list) s += "\\end{itemize}\n";
        s += "\\end{block}\n";
        s += "\\end{minipage}\n";
        s += "\\end{textblock}\n";
    }
    s += "\\end{frame}\n";
    s += "\\end{document}\n";
    return s;
}

} // namespace posterforge
