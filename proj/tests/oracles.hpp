#pragma once

// Independent reference computations for tests. Nothing here calls into the
// library's numerical code paths: regressions solve the normal equations by
// explicit inversion, TextRank is plain power iteration, layouts are found by
// enumerating every tree, and sampling is replayed from the documented draw
// protocol.

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace oracle {

inline constexpr double kPi = 3.14159265358979323846;

template <std::size_t N>
using Vec = std::array<double, N>;
template <std::size_t N>
using Mat = std::array<std::array<double, N>, N>;

/// 3x3 inverse by cofactors.
inline Mat<3> inverse3(const Mat<3>& m) {
    const double a = m[0][0], b = m[0][1], c = m[0][2];
    const double d = m[1][0], e = m[1][1], f = m[1][2];
    const double g = m[2][0], h = m[2][1], i = m[2][2];
    const double A = e * i - f * h, B = -(d * i - f * g), C = d * h - e * g;
    const double det = a * A + b * B + c * C;
    Mat<3> r{};
    r[0] = {A / det, -(b * i - c * h) / det, (b * f - c * e) / det};
    r[1] = {B / det, (a * i - c * g) / det, -(a * f - c * d) / det};
    r[2] = {C / det, -(a * h - b * g) / det, (a * e - b * d) / det};
    return r;
}

/// N x N inverse by Gauss-Jordan elimination with partial pivoting.
template <std::size_t N>
Mat<N> inverse(Mat<N> m) {
    if constexpr (N == 3) return inverse3(m);
    Mat<N> inv{};
    for (std::size_t i = 0; i < N; ++i) inv[i][i] = 1.0;
    for (std::size_t c = 0; c < N; ++c) {
        std::size_t p = c;
        for (std::size_t r = c + 1; r < N; ++r)
            if (std::abs(m[r][c]) > std::abs(m[p][c])) p = r;
        std::swap(m[p], m[c]);
        std::swap(inv[p], inv[c]);
        const double piv = m[c][c];
        for (std::size_t k = 0; k < N; ++k) {
            m[c][k] /= piv;
            inv[c][k] /= piv;
        }
        for (std::size_t r = 0; r < N; ++r) {
            if (r == c) continue;
            const double f = m[r][c];
            for (std::size_t k = 0; k < N; ++k) {
                m[r][k] -= f * m[c][k];
                inv[r][k] -= f * inv[c][k];
            }
        }
    }
    return inv;
}

/// w = (X^T X + lambda I)^-1 X^T y.
template <std::size_t N>
Vec<N> normal_equations(const std::vector<Vec<N>>& x, const std::vector<double>& y,
                        double lambda = 0.0) {
    Mat<N> xtx{};
    Vec<N> xty{};
    for (std::size_t r = 0; r < x.size(); ++r)
        for (std::size_t i = 0; i < N; ++i) {
            xty[i] += x[r][i] * y[r];
            for (std::size_t j = 0; j < N; ++j) xtx[i][j] += x[r][i] * x[r][j];
        }
    for (std::size_t i = 0; i < N; ++i) xtx[i][i] += lambda;
    const auto inv = inverse<N>(xtx);
    Vec<N> w{};
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) w[i] += inv[i][j] * xty[j];
    return w;
}

inline double normal_log_density(double x, double mu, double sigma) {
    return -std::log(sigma * std::sqrt(2.0 * kPi)) - (x - mu) * (x - mu) / (2.0 * sigma * sigma);
}

/// Power iteration on S = (1-d) + d M^T S with M the row-normalized weights,
/// iterated until successive iterates differ by < tol.
inline std::vector<double> textrank_power(const std::vector<std::vector<double>>& w, double d,
                                          double tol = 1e-14, int max_iter = 100000) {
    const std::size_t n = w.size();
    std::vector<double> rowsum(n, 0.0);
    for (std::size_t j = 0; j < n; ++j)
        for (double v : w[j]) rowsum[j] += v;
    std::vector<double> s(n, 1.0);
    for (int it = 0; it < max_iter; ++it) {
        std::vector<double> next(n, 1.0 - d);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (rowsum[j] > 0.0) next[i] += d * w[j][i] / rowsum[j] * s[j];
        double diff = 0.0;
        for (std::size_t i = 0; i < n; ++i) diff = std::max(diff, std::abs(next[i] - s[i]));
        s = next;
        if (diff < tol) break;
    }
    return s;
}

struct Box {
    double x, y, w, h;
};

/// Every order-preserving guillotine tree over panels [0, k): calls
/// `visit(leaf_boxes)` once per tree, where the split ratio at each node is
/// the first part's share of the node's total size.
class LayoutEnumerator {
public:
    LayoutEnumerator(std::vector<double> sizes) : sizes_(std::move(sizes)) {}

    void run(const Box& page, const std::function<void(const std::vector<Box>&)>& visit) {
        auto all = trees(0, sizes_.size(), page);
        for (const auto& t : all) visit(t);
    }

private:
    std::vector<std::vector<Box>> trees(std::size_t a, std::size_t b, const Box& r) {
        if (b - a == 1) return {{r}};
        std::vector<std::vector<Box>> out;
        double total = 0.0;
        for (std::size_t j = a; j < b; ++j) total += sizes_[j];
        double head = 0.0;
        for (std::size_t i = a + 1; i < b; ++i) {
            head += sizes_[i - 1];
            const double t = head / total;
            const Box tops[2] = {{r.x, r.y, r.w, r.h * t}, {r.x, r.y, r.w * t, r.h}};
            const Box rests[2] = {{r.x, r.y + r.h * t, r.w, r.h * (1 - t)},
                                  {r.x + r.w * t, r.y, r.w * (1 - t), r.h}};
            for (int o = 0; o < 2; ++o) {
                const auto left = trees(a, i, tops[o]);
                const auto right = trees(i, b, rests[o]);
                for (const auto& l : left)
                    for (const auto& rr : right) {
                        auto joined = l;
                        joined.insert(joined.end(), rr.begin(), rr.end());
                        out.push_back(std::move(joined));
                    }
            }
        }
        return out;
    }

    std::vector<double> sizes_;
};

struct EnumerationResult {
    double best_loss = std::numeric_limits<double>::infinity();
    std::size_t count = 0;
};

inline EnumerationResult brute_force_layout(const std::vector<double>& sizes,
                                            const std::vector<double>& aspects,
                                            const Box& page = {0, 0, 1, 1}) {
    double total = 0.0;
    for (double s : sizes) total += s;
    std::vector<double> norm;
    for (double s : sizes) norm.push_back(s / total);
    EnumerationResult res;
    LayoutEnumerator(norm).run(page, [&](const std::vector<Box>& leaves) {
        double loss = 0.0;
        for (std::size_t i = 0; i < leaves.size(); ++i)
            loss += std::abs(aspects[i] - leaves[i].w / leaves[i].h);
        res.best_loss = std::min(res.best_loss, loss);
        ++res.count;
    });
    return res;
}

inline std::size_t catalan(std::size_t n) {
    std::size_t c = 1;
    for (std::size_t i = 0; i < n; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
    return c;
}

/// Replays compose_panel's documented draw protocol and returns, for the
/// feasible draw with the highest likelihood, each element's (u, h index).
struct ReplayElement {
    double mean_u;
    std::array<double, 3> probs;
    double aspect; // r_g
};

struct ReplayResult {
    bool found = false;
    std::vector<double> u;
    std::vector<int> h;
    double log_likelihood = -std::numeric_limits<double>::infinity();
    std::size_t feasible = 0;
};

inline ReplayResult replay_compose(const std::vector<ReplayElement>& els, double sigma,
                                   std::uint64_t seed, std::size_t samples, double panel_w,
                                   double panel_h, double text_height, double page_aspect,
                                   double u_min = 1e-3) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    ReplayResult best;
    for (std::size_t s = 0; s < samples; ++s) {
        std::vector<double> u(els.size());
        std::vector<int> h(els.size());
        double ll = 0.0, height = text_height;
        for (std::size_t e = 0; e < els.size(); ++e) {
            u[e] = std::min(1.0, std::max(u_min, els[e].mean_u + sigma * normal(rng)));
            const double v = uniform(rng);
            int k = 0;
            double acc = els[e].probs[0];
            while (k < 2 && v >= acc) acc += els[e].probs[++k];
            h[e] = k;
            ll += normal_log_density(u[e], els[e].mean_u, sigma) + std::log(els[e].probs[k]);
            height += u[e] * panel_w * page_aspect / els[e].aspect;
        }
        if (height >= panel_h) continue;
        ++best.feasible;
        if (ll > best.log_likelihood) {
            best.found = true;
            best.log_likelihood = ll;
            best.u = u;
            best.h = h;
        }
    }
    return best;
}

/// Softmax written out directly (no max shift); fine for moderate logits.
inline std::array<double, 3> softmax3(const std::array<std::array<double, 4>, 3>& w,
                                      const std::array<double, 4>& x) {
    std::array<double, 3> e{};
    double z = 0.0;
    for (int i = 0; i < 3; ++i) {
        double a = 0.0;
        for (int c = 0; c < 4; ++c) a += w[i][c] * x[c];
        e[i] = std::exp(a);
        z += e[i];
    }
    for (auto& v : e) v /= z;
    return e;
}

/// Lower-cased alphanumeric runs of length >= 2.
inline std::vector<std::string> words(const std::string& s) {
    std::vector<std::string> out;
    std::string w;
    for (char c : s + " ") {
        if (std::isalnum(static_cast<unsigned char>(c))) {
            w += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        } else {
            if (w.size() >= 2) out.push_back(w);
            w.clear();
        }
    }
    return out;
}

/// Pairwise TextRank overlap weights computed from scratch.
inline std::vector<std::vector<double>> overlap_weights(const std::vector<std::string>& sents) {
    const std::size_t n = sents.size();
    std::vector<std::vector<double>> w(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            const auto a = words(sents[i]), b = words(sents[j]);
            std::set<std::string> sa(a.begin(), a.end()), common;
            for (const auto& t : b)
                if (sa.count(t)) common.insert(t);
            if (a.size() >= 2 && b.size() >= 2 && !common.empty())
                w[i][j] = common.size() / (std::log(double(a.size())) + std::log(double(b.size())));
        }
    return w;
}

inline double two_pass_mse(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> sq;
    for (std::size_t i = 0; i < a.size(); ++i) sq.push_back((a[i] - b[i]) * (a[i] - b[i]));
    double s = 0.0;
    for (double v : sq) s += v;
    return s / static_cast<double>(sq.size());
}

} // namespace oracle
