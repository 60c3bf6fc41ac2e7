#pragma once

// Order-preserving guillotine partition of a page into panel rectangles.
//
// The page is split recursively: a contiguous run of panels [a, b) is cut
// into [a, i) and [i, b) either horizontally (top / bottom) or vertically
// (left / right), with the cut placed at the fraction of the run's total
// panel size that belongs to [a, i). Every split index and both orientations
// are tried; the tree minimizing the summed aspect-ratio deviation
//   sum_i |r_i - w_i / h_i|
// wins. Coordinates are fractions of page width and height, origin top-left.

#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "posterforge/error.hpp"
#include "posterforge/panel_model.hpp"

namespace posterforge {

struct Rect {
    double x = 0.0;
    double y = 0.0;
    double w = 1.0;
    double h = 1.0;

    double area() const { return w * h; }
    double aspect() const { return w / h; }
    double right() const { return x + w; }
    double bottom() const { return y + h; }
};

/// Horizontal: a horizontal cut line, first child on top.
/// Vertical: a vertical cut line, first child on the left.
enum class Orientation { Horizontal, Vertical };

inline const char* to_string(Orientation o) {
    return o == Orientation::Horizontal ? "horizontal" : "vertical";
}

/// Splits `r` at fraction `t` of its height (horizontal) or width (vertical).
inline std::pair<Rect, Rect> split_rect(const Rect& r, Orientation o, double t) {
    if (o == Orientation::Horizontal)
        return {{r.x, r.y, r.w, r.h * t}, {r.x, r.y + r.h * t, r.w, r.h * (1.0 - t)}};
    return {{r.x, r.y, r.w * t, r.h}, {r.x + r.w * t, r.y, r.w * (1.0 - t), r.h}};
}

/// Binary guillotine tree. Leaves carry a panel index; internal nodes carry
/// the cut orientation and ratio and exactly two children.
struct LayoutTree {
    Rect rect;
    int panel_index = -1;
    Orientation orientation = Orientation::Horizontal;
    double ratio = 0.0;
    std::vector<LayoutTree> children;

    bool is_leaf() const { return children.empty(); }
    const LayoutTree& first() const { return children.at(0); }
    const LayoutTree& second() const { return children.at(1); }

    static LayoutTree leaf(int panel_index, Rect rect = {}) {
        LayoutTree t;
        t.panel_index = panel_index;
        t.rect = rect;
        return t;
    }

    /// Builds a split node; rects of the subtree are recomputed from `rect`.
    static LayoutTree split(Orientation o, double ratio, LayoutTree first, LayoutTree second,
                            Rect rect = {}) {
        LayoutTree t;
        t.orientation = o;
        t.ratio = ratio;
        t.children.push_back(std::move(first));
        t.children.push_back(std::move(second));
        t.place(rect);
        return t;
    }

    /// Assigns `r` to this node and propagates the split geometry downward.
    void place(const Rect& r) {
        rect = r;
        if (is_leaf()) return;
        auto [a, b] = split_rect(r, orientation, ratio);
        children[0].place(a);
        children[1].place(b);
    }

    std::size_t leaf_count() const {
        return is_leaf() ? 1 : children[0].leaf_count() + children[1].leaf_count();
    }

    /// Leaves in in-order (first subtree before second).
    template <class F>
    void for_each_leaf(F&& f) const {
        if (is_leaf()) {
            f(*this);
            return;
        }
        children[0].for_each_leaf(f);
        children[1].for_each_leaf(f);
    }
};

struct LayoutOptions {
    std::size_t max_panels = 12;
};

struct LayoutResult {
    LayoutTree tree;
    double loss = 0.0;
};

namespace detail {

class GuillotineSearch {
public:
    GuillotineSearch(std::span<const PanelAttributes> panels)
        : prefix_(panels.size() + 1, 0.0) {
        for (std::size_t i = 0; i < panels.size(); ++i) {
            prefix_[i + 1] = prefix_[i] + panels[i].size;
            aspect_.push_back(panels[i].aspect);
        }
    }

    struct Choice {
        double loss = std::numeric_limits<double>::infinity();
        std::size_t split = 0;
        Orientation orientation = Orientation::Horizontal;
    };

    /// Best loss for panels [a, b) inside `r`; the winning top-level cut is
    /// stored in `choice`. Strict improvement only, so the first candidate
    /// (earliest split, horizontal first) wins ties.
    double search(std::size_t a, std::size_t b, const Rect& r, Choice* choice = nullptr) const {
        if (b - a == 1) return std::abs(aspect_[a] - r.w / r.h);
        Choice best;
        const double total = prefix_[b] - prefix_[a];
        for (std::size_t i = a + 1; i < b; ++i) {
            const double t = (prefix_[i] - prefix_[a]) / total;
            for (auto o : {Orientation::Horizontal, Orientation::Vertical}) {
                auto [r1, r2] = split_rect(r, o, t);
                const double loss = search(a, i, r1) + search(i, b, r2);
                if (best.loss > loss) best = {loss, i, o};
            }
        }
        if (choice) *choice = best;
        return best.loss;
    }

    LayoutTree build(std::size_t a, std::size_t b, const Rect& r) const {
        if (b - a == 1) return LayoutTree::leaf(static_cast<int>(a), r);
        Choice c;
        search(a, b, r, &c);
        const double t = (prefix_[c.split] - prefix_[a]) / (prefix_[b] - prefix_[a]);
        auto [r1, r2] = split_rect(r, c.orientation, t);
        LayoutTree node;
        node.rect = r;
        node.orientation = c.orientation;
        node.ratio = t;
        node.children.push_back(build(a, c.split, r1));
        node.children.push_back(build(c.split, b, r2));
        return node;
    }

private:
    std::vector<double> prefix_;
    std::vector<double> aspect_;
};

} // namespace detail

/// Sizes rescaled to sum to one; the layout search sees only relative sizes.
inline std::vector<PanelAttributes> normalize_sizes(std::span<const PanelAttributes> panels) {
    double total = 0.0;
    for (const auto& p : panels) {
        if (!(p.size > 0.0) || !std::isfinite(p.size))
            throw LayoutError("panel sizes must be positive and finite");
        total += p.size;
    }
    std::vector<PanelAttributes> out(panels.begin(), panels.end());
    for (auto& p : out) p.size /= total;
    return out;
}

/// Exhaustive search for the minimum-loss order-preserving guillotine tree.
inline LayoutResult generate_layout(std::span<const PanelAttributes> panels, const Rect& area = {},
                                    const LayoutOptions& opt = {}) {
    if (panels.empty()) throw LayoutError("cannot lay out zero panels");
    if (panels.size() > opt.max_panels)
        throw LayoutError("too many panels (" + std::to_string(panels.size()) + " > " +
                          std::to_string(opt.max_panels) +
                          "); merge sections so the poster has at most " +
                          std::to_string(opt.max_panels) + " panels");
    if (!(area.w > 0.0 && area.h > 0.0)) throw LayoutError("layout area must have positive size");
    const auto normalized = normalize_sizes(panels);
    detail::GuillotineSearch s(normalized);
    LayoutResult res;
    res.loss = s.search(0, normalized.size(), area);
    res.tree = s.build(0, normalized.size(), area);
    return res;
}

/// Rects of the leaves, indexed by panel.
inline std::vector<Rect> tree_rects(const LayoutTree& tree) {
    std::vector<Rect> rects(tree.leaf_count());
    std::vector<bool> seen(rects.size(), false);
    tree.for_each_leaf([&](const LayoutTree& leaf) {
        const auto i = static_cast<std::size_t>(leaf.panel_index);
        if (leaf.panel_index < 0 || i >= rects.size() || seen[i])
            throw LayoutError("layout tree leaves must carry panel indices 0..k-1 exactly once");
        seen[i] = true;
        rects[i] = leaf.rect;
    });
    return rects;
}

/// Summed aspect-ratio deviation of the tree's leaves from the desired
/// panel aspects.
inline double layout_loss(std::span<const PanelAttributes> panels, const LayoutTree& tree) {
    if (tree.leaf_count() != panels.size())
        throw LayoutError("layout has " + std::to_string(tree.leaf_count()) + " leaves but " +
                          std::to_string(panels.size()) + " panels were given");
    const auto rects = tree_rects(tree);
    double loss = 0.0;
    for (std::size_t i = 0; i < rects.size(); ++i)
        loss += std::abs(panels[i].aspect - rects[i].aspect());
    return loss;
}

inline nlohmann::json rect_to_json(const Rect& r) { return {r.x, r.y, r.w, r.h}; }

/// Debug dump: nested objects with orientation/ratio on splits and the panel
/// index on leaves; every node carries its rect as [x, y, w, h].
inline nlohmann::json layout_to_json(const LayoutTree& t) {
    if (t.is_leaf()) return {{"panel", t.panel_index}, {"rect", rect_to_json(t.rect)}};
    return {{"split", to_string(t.orientation)},
            {"ratio", t.ratio},
            {"rect", rect_to_json(t.rect)},
            {"first", layout_to_json(t.first())},
            {"second", layout_to_json(t.second())}};
}

} // namespace posterforge
