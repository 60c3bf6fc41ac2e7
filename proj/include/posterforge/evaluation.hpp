#pragma once

// Held-out accuracy of the panel attribute model against a ridge-regression
// baseline trained on the same (t_p, g_p) features.

#include <cstdint>
#include <cstdio>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "posterforge/content_model.hpp"
#include "posterforge/error.hpp"
#include "posterforge/linear_fit.hpp"
#include "posterforge/model.hpp"
#include "posterforge/panel_model.hpp"

namespace posterforge {

inline double mse(std::span<const double> pred, std::span<const double> truth) {
    if (pred.empty()) throw InputError("mse: empty input");
    if (pred.size() != truth.size()) throw InputError("mse: length mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        const double d = pred[i] - truth[i];
        s += d * d;
    }
    return s / static_cast<double>(pred.size());
}

inline constexpr double kBaselineRidge = 1e-3;

struct BaselineModel {
    Features<3> size_weights{};
    Features<3> aspect_weights{};
};

inline BaselineModel fit_linear_baseline(std::span<const PanelSample> train,
                                         double lambda = kBaselineRidge) {
    std::vector<Features<3>> x;
    std::vector<double> ys, yr;
    for (const auto& p : train) {
        x.push_back(panel_features(p.text_ratio, p.graphic_ratio));
        ys.push_back(p.size);
        yr.push_back(p.aspect);
    }
    return {ridge<3>(x, ys, lambda, "baseline size regressor").weights,
            ridge<3>(x, yr, lambda, "baseline aspect regressor").weights};
}

inline PanelAttributes predict_baseline(const BaselineModel& m, double text_ratio,
                                        double graphic_ratio) {
    const auto x = panel_features(text_ratio, graphic_ratio);
    return {dot(m.size_weights, x), dot(m.aspect_weights, x)};
}

struct EvalReport {
    double mse_size_model = 0.0;
    double mse_aspect_model = 0.0;
    double mse_size_baseline = 0.0;
    double mse_aspect_baseline = 0.0;
    std::size_t n_train = 0; // documents
    std::size_t n_test = 0;  // documents
    std::size_t n_train_panels = 0;
    std::size_t n_test_panels = 0;
    std::uint64_t seed = 0;
};

struct PredictionRow {
    std::string document_id;
    int panel_index = 0;
    double size_pred = 0.0;
    double size_true = 0.0;
    double aspect_pred = 0.0;
    double aspect_true = 0.0;
    double size_baseline = 0.0;
    double aspect_baseline = 0.0;
};

struct EvalResult {
    EvalReport report;
    std::vector<PredictionRow> predictions;
};

/// Document indices on each side of a train/test split.
struct Split {
    std::vector<std::size_t> train;
    std::vector<std::size_t> test;
};

/// Resolves a split file {"test": [ids], "train": [ids]?} against corpus ids.
/// Without "train", every document not in "test" trains.
inline Split resolve_split(const nlohmann::json& j, const std::vector<AnnotatedDocument>& corpus) {
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < corpus.size(); ++i) index[corpus[i].id] = i;

    auto read_ids = [&](const char* key, std::set<std::size_t>& out) {
        const auto& arr = j.at(key);
        if (!arr.is_array()) throw ValidationError(std::string("$.") + key, "expected an array");
        for (const auto& v : arr) {
            if (!v.is_string()) throw ValidationError(std::string("$.") + key, "expected ids");
            const auto id = v.get<std::string>();
            auto it = index.find(id);
            if (it == index.end()) throw InputError("split references unknown document id: " + id);
            if (!out.insert(it->second).second)
                throw InputError("split lists document id twice: " + id);
        }
    };

    if (!j.is_object() || !j.contains("test"))
        throw ValidationError("$.test", "split file needs a \"test\" id list");
    std::set<std::size_t> test, train;
    read_ids("test", test);
    if (j.contains("train")) {
        read_ids("train", train);
        for (auto i : train)
            if (test.contains(i))
                throw InputError("split is overlapping: " + corpus[i].id + " is in train and test");
    } else {
        for (std::size_t i = 0; i < corpus.size(); ++i)
            if (!test.contains(i)) train.insert(i);
    }
    if (train.empty()) throw InputError("split has no training documents");
    if (test.empty()) throw InputError("split has no test documents");
    return {{train.begin(), train.end()}, {test.begin(), test.end()}};
}

/// Trains the panel model and the baseline on the train side and scores both
/// on the test side. Both estimators are deterministic; `seed` is recorded
/// for provenance only.
inline EvalResult evaluate(const std::vector<AnnotatedDocument>& corpus, const Split& split,
                           std::uint64_t seed, const PanelModelOptions& opt = {}) {
    if (split.train.empty() || split.test.empty())
        throw InputError("evaluate: train and test sides must both be non-empty");
    std::set<std::size_t> seen;
    for (auto i : split.train) {
        if (i >= corpus.size()) throw InputError("evaluate: split index out of range");
        seen.insert(i);
    }
    for (auto i : split.test) {
        if (i >= corpus.size()) throw InputError("evaluate: split index out of range");
        if (seen.contains(i)) throw InputError("evaluate: train and test overlap");
    }

    TrainingRows train;
    for (auto i : split.train) append_training_rows(corpus[i], train);
    const auto model = fit_panel_model(train.panels, opt);
    const auto baseline = fit_linear_baseline(train.panels);

    EvalResult res;
    std::vector<double> sp, st, rp, rt, sb, rb;
    for (auto i : split.test) {
        TrainingRows rows;
        append_training_rows(corpus[i], rows);
        for (std::size_t k = 0; k < rows.panels.size(); ++k) {
            const auto& p = rows.panels[k];
            const auto pred = infer_panel_attributes(model, p.text_ratio, p.graphic_ratio, opt);
            const auto base = predict_baseline(baseline, p.text_ratio, p.graphic_ratio);
            res.predictions.push_back({corpus[i].id, static_cast<int>(k), pred.size, p.size,
                                       pred.aspect, p.aspect, base.size, base.aspect});
            sp.push_back(pred.size);
            st.push_back(p.size);
            rp.push_back(pred.aspect);
            rt.push_back(p.aspect);
            sb.push_back(base.size);
            rb.push_back(base.aspect);
        }
    }
    auto& r = res.report;
    r.mse_size_model = mse(sp, st);
    r.mse_aspect_model = mse(rp, rt);
    r.mse_size_baseline = mse(sb, st);
    r.mse_aspect_baseline = mse(rb, rt);
    r.n_train = split.train.size();
    r.n_test = split.test.size();
    r.n_train_panels = train.panels.size();
    r.n_test_panels = st.size();
    r.seed = seed;
    return res;
}

inline nlohmann::json report_to_json(const EvalReport& r) {
    return {{"mse_size_model", r.mse_size_model},
            {"mse_aspect_model", r.mse_aspect_model},
            {"mse_size_baseline", r.mse_size_baseline},
            {"mse_aspect_baseline", r.mse_aspect_baseline},
            {"n_train", r.n_train},
            {"n_test", r.n_test},
            {"n_train_panels", r.n_train_panels},
            {"n_test_panels", r.n_test_panels},
            {"seed", r.seed}};
}

inline constexpr const char* kPredictionCsvHeader =
    "document_id,panel_index,s_pred,s_true,r_pred,r_true,s_baseline,r_baseline";

/// Per-panel predictions, one row per test panel, doubles printed with 17
/// significant digits so they read back exactly.
inline std::string predictions_to_csv(const std::vector<PredictionRow>& rows) {
    std::string out = std::string(kPredictionCsvHeader) + "\n";
    char buf[512];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, ",%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.panel_index,
                      r.size_pred, r.size_true, r.aspect_pred, r.aspect_true, r.size_baseline,
                      r.aspect_baseline);
        out += r.document_id;
        out += buf;
    }
    return out;
}

} // namespace posterforge
