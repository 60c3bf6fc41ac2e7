#pragma once

// TextRank sentence extraction, run independently per section.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "posterforge/content_model.hpp"
#include "posterforge/error.hpp"

namespace posterforge {

struct SummarizerOptions {
    double damping = 0.85;
    double tolerance = 1e-6;
    int max_iterations = 100;
    std::set<std::string> stopwords; // empty: no stopword removal
};

/// Symmetric, zero-diagonal similarity matrix over n sentences (row-major).
class SentenceGraph {
public:
    explicit SentenceGraph(std::size_t n) : n_(n), w_(n * n, 0.0) {}

    std::size_t size() const { return n_; }
    double weight(std::size_t i, std::size_t j) const { return w_[i * n_ + j]; }

    /// Sets both (i, j) and (j, i). Self loops and negative weights are rejected.
    void set_weight(std::size_t i, std::size_t j, double w) {
        if (i == j) throw InputError("sentence graph: self loops are not allowed");
        if (!(w >= 0.0)) throw InputError("sentence graph: weights must be nonnegative");
        w_[i * n_ + j] = w;
        w_[j * n_ + i] = w;
    }

private:
    std::size_t n_;
    std::vector<double> w_;
};

/// Lowercased alphanumeric runs of length >= 2, minus stopwords. Bytes >= 0x80
/// count as word characters so UTF-8 words stay intact.
inline std::vector<std::string> tokenize(std::string_view text,
                                         const std::set<std::string>& stopwords = {}) {
    std::vector<std::string> out;
    std::string cur;
    auto flush = [&] {
        if (cur.size() >= 2 && !stopwords.contains(cur)) out.push_back(cur);
        cur.clear();
    };
    for (char ch : text) {
        auto c = static_cast<unsigned char>(ch);
        if (c >= 0x80 || std::isalnum(c))
            cur.push_back(c < 0x80 ? static_cast<char>(std::tolower(c)) : ch);
        else
            flush();
    }
    flush();
    return out;
}

/// TextRank overlap similarity: shared distinct tokens over
/// log|a| + log|b|. Zero when either side has fewer than two tokens.
inline double sentence_similarity(const std::vector<std::string>& a,
                                  const std::vector<std::string>& b) {
    if (a.size() < 2 || b.size() < 2) return 0.0;
    std::set<std::string_view> sa(a.begin(), a.end());
    std::set<std::string_view> sb(b.begin(), b.end());
    std::size_t shared = 0;
    for (auto t : sa) shared += sb.count(t);
    if (shared == 0) return 0.0;
    return static_cast<double>(shared) /
           (std::log(static_cast<double>(a.size())) + std::log(static_cast<double>(b.size())));
}

inline SentenceGraph build_sentence_graph(const std::vector<std::string>& sentences,
                                          const std::set<std::string>& stopwords = {}) {
    std::vector<std::vector<std::string>> tokens;
    tokens.reserve(sentences.size());
    for (const auto& s : sentences) tokens.push_back(tokenize(s, stopwords));
    SentenceGraph g(sentences.size());
    for (std::size_t i = 0; i < sentences.size(); ++i)
        for (std::size_t j = i + 1; j < sentences.size(); ++j)
            g.set_weight(i, j, sentence_similarity(tokens[i], tokens[j]));
    return g;
}

/// Weighted PageRank: S(i) = (1-d) + d * sum_j w_ji / out(j) * S(j), Jacobi
/// iteration from S = 1 until max |dS| < tol or max_iter sweeps.
inline std::vector<double> rank_sentences(const SentenceGraph& g, double damping = 0.85,
                                          double tol = 1e-6, int max_iter = 100) {
    if (!(damping > 0.0 && damping < 1.0)) throw InputError("damping must lie in (0, 1)");
    if (!(tol > 0.0)) throw InputError("tolerance must be positive");
    const std::size_t n = g.size();
    std::vector<double> out_weight(n, 0.0);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) out_weight[j] += g.weight(j, k);

    std::vector<double> score(n, 1.0), next(n);
    for (int it = 0; it < max_iter; ++it) {
        double delta = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                const double w = g.weight(j, i);
                if (w > 0.0) s += w / out_weight[j] * score[j];
            }
            next[i] = (1.0 - damping) + damping * s;
            delta = std::max(delta, std::abs(next[i] - score[i]));
        }
        score.swap(next);
        if (delta < tol) break;
    }
    return score;
}

/// Number of sentences kept for a section: max(1, ceil(ratio * n)).
inline std::size_t summary_length(std::size_t n, double ratio) {
    // Guard against ratio*n landing a hair above an integer (0.3*10).
    const double raw = ratio * static_cast<double>(n);
    auto k = static_cast<std::size_t>(std::ceil(raw - 1e-9));
    return std::clamp<std::size_t>(k, 1, n);
}

/// Top-scoring sentences of a section, re-emitted in document order. Ties go
/// to the earlier sentence. Sections without sentences yield nothing.
inline std::vector<std::string> extract_summary(const Section& section,
                                                const SummarizerOptions& opt = {}) {
    const auto& sents = section.sentences;
    if (sents.empty()) return {};
    const auto scores = rank_sentences(build_sentence_graph(sents, opt.stopwords), opt.damping,
                                       opt.tolerance, opt.max_iterations);
    std::vector<std::size_t> order(sents.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
    order.resize(summary_length(sents.size(), section.extraction_ratio));
    std::sort(order.begin(), order.end());

    std::vector<std::string> out;
    out.reserve(order.size());
    for (auto i : order) out.push_back(sents[i]);
    return out;
}

inline std::vector<std::vector<std::string>> summarize_document(const DocumentContent& doc,
                                                                const SummarizerOptions& opt = {}) {
    std::vector<std::vector<std::string>> out;
    out.reserve(doc.sections.size());
    for (const auto& s : doc.sections) out.push_back(extract_summary(s, opt));
    return out;
}

} // namespace posterforge
