#pragma once

// CLI command implementations. Each returns the process exit status:
// 0 success, 1 input error, 2 internal error. Content goes to files; progress
// and timings go to `log` only, so outputs never depend on the clock.

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>

#include "posterforge/config.hpp"
#include "posterforge/content_model.hpp"
#include "posterforge/error.hpp"
#include "posterforge/evaluation.hpp"
#include "posterforge/layout.hpp"
#include "posterforge/model.hpp"
#include "posterforge/pipeline.hpp"
#include "posterforge/renderer.hpp"

namespace posterforge {

enum ExitCode : int { kExitOk = 0, kExitInput = 1, kExitInternal = 2 };

namespace detail {

inline void write_file(const std::filesystem::path& p, const std::string& bytes) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + p.string());
    out << bytes;
    out.flush();
    if (!out) throw Error("failed writing " + p.string());
}

template <class F>
int guarded(std::ostream& log, const char* module, F&& body) {
    try {
        body();
        return kExitOk;
    } catch (const InputError& e) {
        log << "error [" << module << "]: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::exception& e) {
        log << "internal error [" << module << "]: " << e.what() << '\n';
        return kExitInternal;
    }
}

inline std::string seconds(double s) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4fs", s);
    return buf;
}

} // namespace detail

/// Resolves the configuration: explicit path, then $POSTERFORGE_CONFIG, then
/// defaults.
inline Config resolve_config(const std::optional<std::filesystem::path>& path) {
    if (path) return load_config(*path);
    if (const char* env = std::getenv("POSTERFORGE_CONFIG"); env && *env) return load_config(env);
    return Config{};
}

inline int cmd_train(const std::filesystem::path& corpus_dir,
                     const std::filesystem::path& out_model, const Config& cfg,
                     std::ostream& log) {
    return detail::guarded(log, "train", [&] {
        const auto corpus = load_corpus(corpus_dir);
        const auto rows = training_rows(corpus);
        const auto r = train_model(rows, {cfg.panel, cfg.composer});
        save_model(r.model, out_model);
        const auto& m = r.model;
        log << "documents: " << corpus.size() << ", panels: " << r.panel_rows
            << ", elements: " << r.element_rows << '\n';
        log << "panel size sigma: " << m.panel.size_sigma
            << ", panel aspect sigma: " << m.panel.aspect_sigma << '\n';
        log << "element width sigma: " << m.composition.size_sigma << '\n';
        log << "position model log-likelihood: " << r.position_log_likelihood << '\n';
        if (r.position_status == FitStatus::SingleClass)
            log << "warning: all training elements share one position; position model pinned\n";
        log << "model written to " << out_model.string() << '\n';
    });
}

inline int cmd_generate(const std::filesystem::path& doc_path,
                        const std::filesystem::path& model_path,
                        const std::filesystem::path& out_dir, std::uint64_t seed,
                        const Config& cfg, std::ostream& log) {
    return detail::guarded(log, "generate", [&] {
        const auto doc = load_document_file(doc_path, cfg.default_extraction_ratio);
        const auto model = load_model(model_path);
        auto res = generate_poster(doc, model, cfg, seed);

        const auto t0 = std::chrono::steady_clock::now();
        const auto svg = render_svg(res.poster);
        const auto tex = render_beamerposter(res.poster);
        nlohmann::json dump = {{"loss", res.layout.loss},
                               {"tree", layout_to_json(res.layout.tree)}};
        std::filesystem::create_directories(out_dir);
        detail::write_file(out_dir / "poster.svg", svg);
        detail::write_file(out_dir / "poster.tex", tex);
        detail::write_file(out_dir / "layout.json", dump.dump(2) + "\n");
        res.timings.push_back(
            {"rendering",
             std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()});

        for (const auto& w : res.warnings) log << "warning: " << w << '\n';
        double total = 0.0;
        for (const auto& t : res.timings) {
            log << t.stage << ": " << detail::seconds(t.seconds) << '\n';
            total += t.seconds;
        }
        log << "total: " << detail::seconds(total) << '\n';
        log << "panels: " << res.poster.panels.size() << ", layout loss: " << res.layout.loss
            << '\n';
    });
}

inline int cmd_eval(const std::filesystem::path& corpus_dir,
                    const std::filesystem::path& split_path,
                    const std::filesystem::path& out_report, std::uint64_t seed,
                    const Config& cfg, std::ostream& log) {
    return detail::guarded(log, "eval", [&] {
        const auto corpus = load_corpus(corpus_dir);
        const auto split = resolve_split(detail::parse_json(detail::read_file(split_path)), corpus);
        const auto res = evaluate(corpus, split, seed, cfg.panel);
        if (out_report.has_parent_path())
            std::filesystem::create_directories(out_report.parent_path());
        detail::write_file(out_report, report_to_json(res.report).dump(2) + "\n");
        auto csv_path = out_report;
        csv_path.replace_extension(".csv");
        detail::write_file(csv_path, predictions_to_csv(res.predictions));
        const auto& r = res.report;
        log << "train documents: " << r.n_train << ", test documents: " << r.n_test << '\n';
        log << "MSE panel size:   model " << r.mse_size_model << ", baseline "
            << r.mse_size_baseline << '\n';
        log << "MSE panel aspect: model " << r.mse_aspect_model << ", baseline "
            << r.mse_aspect_baseline << '\n';
        log << "report: " << out_report.string() << ", predictions: " << csv_path.string()
            << '\n';
    });
}

/// Prints a summary of a document (and its extracted panel features) or of a
/// model file.
inline int cmd_inspect(const std::optional<std::filesystem::path>& doc_path,
                       const std::optional<std::filesystem::path>& model_path, const Config& cfg,
                       std::ostream& out, std::ostream& log) {
    return detail::guarded(log, "inspect", [&] {
        if (!doc_path && !model_path) throw InputError("inspect needs --doc and/or --model");
        if (doc_path) {
            const auto doc = load_document_file(*doc_path, cfg.default_extraction_ratio);
            const auto panels = build_panel_contents(doc, summarize_document(doc, cfg.summarizer));
            out << "title: " << doc.title << "\nsections: " << doc.sections.size()
                << "\npage aspect: " << doc.page_aspect << '\n';
            for (std::size_t i = 0; i < panels.size(); ++i) {
                const auto& s = doc.sections[i];
                const auto& p = panels[i];
                out << "  [" << i << "] " << s.title << ": " << s.sentences.size()
                    << " sentences, ratio " << s.extraction_ratio << ", kept "
                    << p.text_items.size() << ", elements " << p.elements.size()
                    << ", l_p " << p.text_length << ", t_p " << p.text_ratio << ", g_p "
                    << p.graphic_ratio << '\n';
            }
        }
        if (model_path) out << model_to_json(load_model(*model_path)).dump(2) << '\n';
    });
}

} // namespace posterforge
