#pragma once

// Within-panel composition. Each graphical element gets a display width u_g
// (fraction of panel width) and a horizontal anchor h_g:
//   u_g ~ N(w_u . [s_p, l_p, s_g, 1], sigma_u)
//   P(h_g = i) = softmax_i(W_h . [r_p, s_g, r_g, 1])
// Joint assignments are drawn from these distributions and the most likely
// draw that keeps the panel content inside the panel height is kept.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "posterforge/content_model.hpp"
#include "posterforge/error.hpp"
#include "posterforge/layout.hpp"
#include "posterforge/linear_fit.hpp"
#include "posterforge/panel_model.hpp"

namespace posterforge {

using PositionWeights = std::array<Features<4>, kNumPositions>;

struct CompositionModel {
    Features<4> size_weights{}; // w_u over [s_p, l_p, s_g, 1]
    double size_sigma = kSigmaFloor;
    PositionWeights position_weights{}; // rows: left, center, right over [r_p, s_g, r_g, 1]
};

struct SoftmaxOptions {
    double learning_rate = 0.1;
    int iterations = 500;
    double l2 = 1e-4;
};

/// Character cell size used to estimate text height, in page width / page
/// height fractions respectively.
struct TextMetrics {
    double char_width = 0.006;  // alpha
    double line_height = 0.012; // beta
};

struct ComposerOptions {
    double sigma_floor = kSigmaFloor;
    SoftmaxOptions softmax;
    TextMetrics text;
    std::size_t samples = 1000;
    double min_width_ratio = 1e-3; // sampled u_g are clamped to [this, 1]
    double fallback_floor = 0.1;
};

struct SizeSample {
    double panel_size = 0.0;     // s_p
    double text_length = 0.0;    // l_p
    double element_size = 0.0;   // s_g
    double width_ratio = 0.0;    // u_g (target)
};

struct PositionSample {
    double panel_aspect = 0.0;   // r_p
    double element_size = 0.0;   // s_g
    double element_aspect = 0.0; // r_g
    HPosition position = HPosition::Center;
};

inline Features<4> size_features(double panel_size, double text_length, double element_size) {
    return {panel_size, text_length, element_size, 1.0};
}

inline Features<4> position_features(double panel_aspect, double element_size,
                                     double element_aspect) {
    return {panel_aspect, element_size, element_aspect, 1.0};
}

struct SizeModelFit {
    Features<4> weights{};
    double sigma = kSigmaFloor;
};

inline SizeModelFit fit_size_model(std::span<const SizeSample> train,
                                   double sigma_floor = kSigmaFloor) {
    std::vector<Features<4>> x;
    std::vector<double> y;
    for (const auto& s : train) {
        x.push_back(size_features(s.panel_size, s.text_length, s.element_size));
        y.push_back(s.width_ratio);
    }
    const auto f = least_squares<4>(x, y, 5, "element size model");
    return {f.weights, std::max(f.residual_std, sigma_floor)};
}

/// Numerically stable softmax over the three anchor logits.
inline std::array<double, kNumPositions> position_probabilities(const PositionWeights& w,
                                                                const Features<4>& x) {
    std::array<double, kNumPositions> p{};
    double mx = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < kNumPositions; ++i) {
        p[i] = dot(w[i], x);
        mx = std::max(mx, p[i]);
    }
    double z = 0.0;
    for (auto& v : p) {
        v = std::exp(v - mx);
        z += v;
    }
    for (auto& v : p) v /= z;
    return p;
}

enum class FitStatus { Ok, SingleClass };

struct PositionModelFit {
    PositionWeights weights{};
    FitStatus status = FitStatus::Ok;
    double log_likelihood = 0.0;        // final training log-likelihood (unpenalized)
    std::vector<double> objective_trace; // penalized mean log-likelihood per accepted step
};

inline double position_log_likelihood(const PositionWeights& w,
                                      std::span<const PositionSample> data) {
    double ll = 0.0;
    for (const auto& s : data) {
        const auto p = position_probabilities(
            w, position_features(s.panel_aspect, s.element_size, s.element_aspect));
        ll += std::log(p[static_cast<std::size_t>(s.position)]);
    }
    return ll;
}

namespace detail {

inline constexpr std::size_t kPinnedRow = static_cast<std::size_t>(HPosition::Center);

inline double penalized_objective(const PositionWeights& w, std::span<const PositionSample> data,
                                  double l2) {
    double pen = 0.0;
    for (const auto& row : w)
        for (double v : row) pen += v * v;
    return position_log_likelihood(w, data) / static_cast<double>(data.size()) - 0.5 * l2 * pen;
}

} // namespace detail

/// Multinomial logistic regression by batch gradient ascent on the mean
/// log-likelihood with an L2 penalty. The center row stays at zero. A step
/// that would lower the objective is rejected and the rate halved, so the
/// recorded objective never decreases.
inline PositionModelFit fit_position_model(std::span<const PositionSample> train,
                                           const SoftmaxOptions& opt = {}) {
    if (train.size() < 6)
        throw FitError(FitError::Kind::TooFewRows,
                       "element position model: too few rows (" + std::to_string(train.size()) +
                           ", need 6)");
    std::array<std::size_t, kNumPositions> counts{};
    for (const auto& s : train) ++counts[static_cast<std::size_t>(s.position)];
    const auto present = std::count_if(counts.begin(), counts.end(), [](auto c) { return c > 0; });

    PositionModelFit fit;
    if (present == 1) {
        constexpr double kLogit = 10.0;
        const auto cls =
            static_cast<std::size_t>(std::find_if(counts.begin(), counts.end(),
                                                  [](auto c) { return c > 0; }) -
                                     counts.begin());
        for (std::size_t i = 0; i < kNumPositions; ++i) {
            if (i == detail::kPinnedRow) continue;
            fit.weights[i][3] = (cls == detail::kPinnedRow) ? -kLogit : (i == cls ? kLogit : 0.0);
        }
        fit.status = FitStatus::SingleClass;
        fit.log_likelihood = position_log_likelihood(fit.weights, train);
        return fit;
    }

    const double n = static_cast<double>(train.size());
    double rate = opt.learning_rate;
    double obj = detail::penalized_objective(fit.weights, train, opt.l2);
    fit.objective_trace.push_back(obj);
    for (int it = 0; it < opt.iterations; ++it) {
        PositionWeights grad{};
        for (const auto& s : train) {
            const auto x = position_features(s.panel_aspect, s.element_size, s.element_aspect);
            const auto p = position_probabilities(fit.weights, x);
            for (std::size_t i = 0; i < kNumPositions; ++i) {
                const double err =
                    (static_cast<std::size_t>(s.position) == i ? 1.0 : 0.0) - p[i];
                for (std::size_t c = 0; c < 4; ++c) grad[i][c] += err * x[c] / n;
            }
        }
        for (std::size_t i = 0; i < kNumPositions; ++i)
            for (std::size_t c = 0; c < 4; ++c) grad[i][c] -= opt.l2 * fit.weights[i][c];
        grad[detail::kPinnedRow] = {};

        PositionWeights next = fit.weights;
        for (std::size_t i = 0; i < kNumPositions; ++i)
            for (std::size_t c = 0; c < 4; ++c) next[i][c] += rate * grad[i][c];
        const double next_obj = detail::penalized_objective(next, train, opt.l2);
        if (next_obj >= obj) {
            fit.weights = next;
            obj = next_obj;
            fit.objective_trace.push_back(obj);
        } else {
            rate *= 0.5;
        }
    }
    fit.log_likelihood = position_log_likelihood(fit.weights, train);
    return fit;
}

inline HPosition predict_position(const PositionWeights& w, const Features<4>& x) {
    const auto p = position_probabilities(w, x);
    return static_cast<HPosition>(std::max_element(p.begin(), p.end()) - p.begin());
}

/// Element display geometry needed for the height estimate.
struct PlacedSize {
    double width_ratio = 0.0;    // u_g
    double element_aspect = 1.0; // r_g
};

/// Height of a panel's content as a fraction of page height: stacked element
/// heights plus whole text lines.
///   sum u_g * w_p * page_aspect / r_g  +  beta * ceil(alpha * l_p / w_p)
inline double content_height(double panel_width, long long text_length,
                             std::span<const PlacedSize> elements, const TextMetrics& metrics,
                             double page_aspect) {
    double h = 0.0;
    for (const auto& e : elements)
        h += e.width_ratio * panel_width * page_aspect / e.element_aspect;
    if (text_length > 0) {
        // Snap values within rounding noise of an integer before ceil.
        const double lines = metrics.char_width * static_cast<double>(text_length) / panel_width;
        h += metrics.line_height * std::ceil(lines - 1e-9);
    }
    return h;
}

struct ElementPlacement {
    std::string element_id;
    double width_ratio = 0.0; // u_g
    HPosition position = HPosition::Center;
    double element_aspect = 1.0;
    std::string path;
};

struct TextBlock {
    std::string text;
};

using Block = std::variant<TextBlock, ElementPlacement>;

struct PanelComposition {
    int panel_index = 0;
    std::vector<Block> blocks; // top to bottom
    double content_height = 0.0;
    bool fits = true;      // content_height < panel height
    bool fallback = false; // no feasible draw; deterministic shrink applied
    double log_likelihood = 0.0;
};

/// Everything compose_panel needs about one panel.
struct PanelInput {
    int panel_index = 0;
    Rect rect;
    const PanelContent* content = nullptr;
    double page_aspect = 1.0;
};

struct ElementDistribution {
    double mean_width = 0.0;
    std::array<double, kNumPositions> position_probs{};
};

/// Per-element CPDs for a panel, conditioned on the panel's realized size and
/// aspect.
inline std::vector<ElementDistribution> element_distributions(const CompositionModel& m,
                                                              const PanelInput& in) {
    std::vector<ElementDistribution> out;
    for (const auto& e : in.content->elements) {
        ElementDistribution d;
        d.mean_width = dot(m.size_weights, size_features(in.rect.area(),
                                                         static_cast<double>(in.content->text_length),
                                                         e.size()));
        d.position_probs = position_probabilities(
            m.position_weights, position_features(in.rect.aspect(), e.size(), e.aspect()));
        out.push_back(d);
    }
    return out;
}

inline double placement_log_likelihood(const CompositionModel& m, const ElementDistribution& d,
                                       double width_ratio, HPosition h) {
    return gaussian_log_pdf(width_ratio, d.mean_width, m.size_sigma) +
           std::log(d.position_probs[static_cast<std::size_t>(h)]);
}

/// Draws `opt.samples` joint assignments (per sample, per element: u_g from
/// std::normal_distribution then h_g by inverse CDF of one
/// std::uniform_real_distribution draw, all from std::mt19937_64(seed)),
/// discards draws whose content overflows the panel, and keeps the most likely
/// survivor. Ties keep the earlier draw.
inline PanelComposition compose_panel(const CompositionModel& m, const PanelInput& in,
                                      std::uint64_t seed, const ComposerOptions& opt = {}) {
    if (!in.content) throw InputError("compose_panel: missing panel content");
    const auto& content = *in.content;
    const std::size_t n_el = content.elements.size();

    PanelComposition comp;
    comp.panel_index = in.panel_index;
    for (const auto& t : content.text_items) comp.blocks.push_back(TextBlock{t});

    auto height_of = [&](std::span<const PlacedSize> sizes) {
        return content_height(in.rect.w, content.text_length, sizes, opt.text, in.page_aspect);
    };

    if (n_el == 0) {
        comp.content_height = height_of({});
        comp.fits = comp.content_height < in.rect.h;
        return comp;
    }

    const auto dists = element_distributions(m, in);
    std::vector<double> best_u(n_el), cur_u(n_el);
    std::vector<HPosition> best_h(n_el), cur_h(n_el);
    std::vector<PlacedSize> sizes(n_el);
    double best_ll = -std::numeric_limits<double>::infinity();
    bool found = false;

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    for (std::size_t s = 0; s < opt.samples; ++s) {
        double ll = 0.0;
        for (std::size_t e = 0; e < n_el; ++e) {
            const auto& d = dists[e];
            cur_u[e] = std::clamp(d.mean_width + m.size_sigma * normal(rng), opt.min_width_ratio,
                                  1.0);
            const double v = uniform(rng);
            std::size_t k = 0;
            double acc = d.position_probs[0];
            while (k + 1 < kNumPositions && v >= acc) acc += d.position_probs[++k];
            cur_h[e] = static_cast<HPosition>(k);
            sizes[e] = {cur_u[e], content.elements[e].aspect()};
            ll += placement_log_likelihood(m, d, cur_u[e], cur_h[e]);
        }
        if (!(height_of(sizes) < in.rect.h)) continue;
        if (ll > best_ll) {
            best_ll = ll;
            best_u = cur_u;
            best_h = cur_h;
            found = true;
        }
    }

    if (!found) {
        comp.fallback = true;
        double elem_h = 0.0;
        for (std::size_t e = 0; e < n_el; ++e) {
            best_u[e] = std::clamp(dists[e].mean_width, opt.min_width_ratio, 1.0);
            best_h[e] = HPosition::Center;
            elem_h += best_u[e] * in.rect.w * in.page_aspect / content.elements[e].aspect();
        }
        const double avail = in.rect.h - height_of({});
        double factor = elem_h > 0.0 ? avail / elem_h * (1.0 - 1e-9) : 1.0;
        factor = std::clamp(factor, opt.fallback_floor, 1.0);
        best_ll = 0.0;
        for (std::size_t e = 0; e < n_el; ++e) {
            best_u[e] = std::max(best_u[e] * factor, opt.min_width_ratio);
            best_ll += placement_log_likelihood(m, dists[e], best_u[e], best_h[e]);
        }
    }

    for (std::size_t e = 0; e < n_el; ++e) {
        const auto& el = content.elements[e];
        sizes[e] = {best_u[e], el.aspect()};
        comp.blocks.push_back(ElementPlacement{el.id, best_u[e], best_h[e], el.aspect(), el.path});
    }
    comp.content_height = height_of(sizes);
    comp.fits = comp.content_height < in.rect.h;
    comp.log_likelihood = best_ll;
    return comp;
}

} // namespace posterforge
