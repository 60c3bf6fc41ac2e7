#pragma once

// Conditional linear Gaussian model for panel size and aspect ratio given the
// panel's text ratio and graphical ratio:
//   s_p ~ N(w_s . [t_p, g_p, 1], sigma_s)
//   r_p ~ N(w_r . [t_p, g_p, 1], sigma_r)

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "posterforge/error.hpp"
#include "posterforge/linear_fit.hpp"

namespace posterforge {

inline constexpr double kSigmaFloor = 1e-6;

struct PanelModelOptions {
    double sigma_floor = kSigmaFloor;
    double size_min = 0.01;  // s_min
    double aspect_min = 0.2; // r_min
    double aspect_max = 5.0; // r_max
};

struct PanelModel {
    Features<3> size_weights{};   // w_s over [t_p, g_p, 1]
    double size_sigma = kSigmaFloor;
    Features<3> aspect_weights{}; // w_r over [t_p, g_p, 1]
    double aspect_sigma = kSigmaFloor;
};

struct PanelAttributes {
    double size = 0.0;   // s_p, fraction of poster area
    double aspect = 1.0; // r_p = w_p / h_p in normalized page coordinates
};

/// One training panel: observed features and annotated attributes.
struct PanelSample {
    double text_ratio = 0.0;
    double graphic_ratio = 0.0;
    double size = 0.0;
    double aspect = 0.0;
};

inline Features<3> panel_features(double text_ratio, double graphic_ratio) {
    return {text_ratio, graphic_ratio, 1.0};
}

/// Maximum-likelihood fit (least squares + RMS residual, floored).
inline PanelModel fit_panel_model(std::span<const PanelSample> train,
                                  const PanelModelOptions& opt = {}) {
    std::vector<Features<3>> x;
    std::vector<double> ys, yr;
    for (const auto& p : train) {
        x.push_back(panel_features(p.text_ratio, p.graphic_ratio));
        ys.push_back(p.size);
        yr.push_back(p.aspect);
    }
    constexpr std::size_t kMinRows = 4;
    const auto fs = least_squares<3>(x, ys, kMinRows, "panel size model");
    const auto fr = least_squares<3>(x, yr, kMinRows, "panel aspect model");
    return PanelModel{fs.weights, std::max(fs.residual_std, opt.sigma_floor), fr.weights,
                      std::max(fr.residual_std, opt.sigma_floor)};
}

/// Unclamped conditional means.
inline PanelAttributes panel_means(const PanelModel& m, double text_ratio, double graphic_ratio) {
    const auto x = panel_features(text_ratio, graphic_ratio);
    return {dot(m.size_weights, x), dot(m.aspect_weights, x)};
}

/// Conditional means clamped to s in [s_min, 1], r in [r_min, r_max].
inline PanelAttributes infer_panel_attributes(const PanelModel& m, double text_ratio,
                                              double graphic_ratio,
                                              const PanelModelOptions& opt = {}) {
    auto a = panel_means(m, text_ratio, graphic_ratio);
    a.size = std::clamp(a.size, opt.size_min, 1.0);
    a.aspect = std::clamp(a.aspect, opt.aspect_min, opt.aspect_max);
    return a;
}

inline double panel_log_likelihood(const PanelModel& m, std::span<const PanelSample> panels) {
    double ll = 0.0;
    for (const auto& p : panels) {
        const auto mean = panel_means(m, p.text_ratio, p.graphic_ratio);
        ll += gaussian_log_pdf(p.size, mean.size, m.size_sigma);
        ll += gaussian_log_pdf(p.aspect, mean.aspect, m.aspect_sigma);
    }
    return ll;
}

} // namespace posterforge
