#include <chrono>
#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "posterforge/layout.hpp"

using namespace posterforge;

namespace {

std::vector<PanelAttributes> random_panels(std::size_t k, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> size(0.05, 1.0), aspect(0.2, 5.0);
    std::vector<PanelAttributes> p(k);
    for (auto& x : p) x = {size(rng), aspect(rng)};
    return p;
}

// Panel sizes of the five-panel example: two equal columns, the left split
// 0.4 / 0.6 with the lower part split 1/3 / 2/3, the right split in half.
std::vector<PanelAttributes> five_panel_example() {
    return {{0.2, 0.5 / 0.4}, {0.1, 0.5 / 0.2}, {0.2, 0.5 / 0.4}, {0.25, 1.0}, {0.25, 1.0}};
}

void expect_tiles(const LayoutTree& t) {
    if (t.is_leaf()) return;
    const auto& a = t.first().rect;
    const auto& b = t.second().rect;
    if (t.orientation == Orientation::Horizontal) {
        EXPECT_NEAR(a.bottom(), b.y, 1e-12);
        EXPECT_NEAR(a.w, t.rect.w, 1e-12);
        EXPECT_NEAR(b.w, t.rect.w, 1e-12);
        EXPECT_NEAR(a.h + b.h, t.rect.h, 1e-12);
    } else {
        EXPECT_NEAR(a.right(), b.x, 1e-12);
        EXPECT_NEAR(a.h, t.rect.h, 1e-12);
        EXPECT_NEAR(b.h, t.rect.h, 1e-12);
        EXPECT_NEAR(a.w + b.w, t.rect.w, 1e-12);
    }
    EXPECT_NEAR(a.x, t.rect.x, 1e-12);
    EXPECT_NEAR(a.y, t.rect.y, 1e-12);
    expect_tiles(t.first());
    expect_tiles(t.second());
}

bool interiors_overlap(const Rect& a, const Rect& b) {
    const double ox = std::min(a.right(), b.right()) - std::max(a.x, b.x);
    const double oy = std::min(a.bottom(), b.bottom()) - std::max(a.y, b.y);
    return ox > 1e-9 && oy > 1e-9;
}

} // namespace

TEST(GenerateLayout, SinglePanelFillsPage) {
    const std::vector<PanelAttributes> p = {{0.3, 1.5}};
    const auto r = generate_layout(p);
    ASSERT_TRUE(r.tree.is_leaf());
    EXPECT_DOUBLE_EQ(r.tree.rect.w, 1.0);
    EXPECT_DOUBLE_EQ(r.tree.rect.h, 1.0);
    EXPECT_DOUBLE_EQ(r.loss, 0.5);
    EXPECT_DOUBLE_EQ(layout_loss(p, r.tree), 0.5);
}

TEST(GenerateLayout, TwoWidePanelsStack) {
    const std::vector<PanelAttributes> p = {{0.5, 2.0}, {0.5, 2.0}};
    const auto r = generate_layout(p);
    ASSERT_FALSE(r.tree.is_leaf());
    EXPECT_EQ(r.tree.orientation, Orientation::Horizontal);
    EXPECT_DOUBLE_EQ(r.tree.ratio, 0.5);
    EXPECT_DOUBLE_EQ(r.loss, 0.0);
    const auto vertical = LayoutTree::split(Orientation::Vertical, 0.5, LayoutTree::leaf(0),
                                            LayoutTree::leaf(1), Rect{});
    EXPECT_DOUBLE_EQ(layout_loss(p, vertical), 3.0);
}

TEST(GenerateLayout, TieGoesToHorizontal) {
    // Horizontal leaves have aspect 2, vertical ones 0.5: both cost 2 * 0.75.
    const std::vector<PanelAttributes> p = {{1.0, 1.25}, {1.0, 1.25}};
    const auto r = generate_layout(p);
    EXPECT_EQ(r.tree.orientation, Orientation::Horizontal);
    EXPECT_DOUBLE_EQ(r.loss, 1.5);
}

// Two zero-loss trees produce these rectangles: the left column cut as
// A | (B / C) or as (A / B) | C. Either is accepted; the geometry is checked.
TEST(GenerateLayout, ReproducesFivePanelExample) {
    const auto p = five_panel_example();
    const auto r = generate_layout(p);
    EXPECT_NEAR(r.loss, 0.0, 1e-12);
    const auto& t = r.tree;
    ASSERT_FALSE(t.is_leaf());
    EXPECT_EQ(t.orientation, Orientation::Vertical);
    EXPECT_NEAR(t.ratio, 0.5, 1e-12);
    EXPECT_EQ(t.first().leaf_count(), 3u);
    EXPECT_EQ(t.first().orientation, Orientation::Horizontal);
    const auto& right = t.second();
    EXPECT_EQ(right.orientation, Orientation::Horizontal);
    EXPECT_NEAR(right.ratio, 0.5, 1e-12);

    const Rect expected[5] = {{0.0, 0.0, 0.5, 0.4}, {0.0, 0.4, 0.5, 0.2}, {0.0, 0.6, 0.5, 0.4},
                              {0.5, 0.0, 0.5, 0.5}, {0.5, 0.5, 0.5, 0.5}};
    const auto rects = tree_rects(t);
    ASSERT_EQ(rects.size(), 5u);
    for (int i = 0; i < 5; ++i) {
        EXPECT_NEAR(rects[i].x, expected[i].x, 1e-12) << i;
        EXPECT_NEAR(rects[i].y, expected[i].y, 1e-12) << i;
        EXPECT_NEAR(rects[i].w, expected[i].w, 1e-12) << i;
        EXPECT_NEAR(rects[i].h, expected[i].h, 1e-12) << i;
    }
}

TEST(GenerateLayout, Errors) {
    EXPECT_THROW(generate_layout(std::vector<PanelAttributes>{}), LayoutError);
    std::vector<PanelAttributes> many(13, {0.1, 1.0});
    EXPECT_THROW(generate_layout(many), LayoutError);
    std::vector<PanelAttributes> bad = {{0.0, 1.0}, {0.5, 1.0}};
    EXPECT_THROW(generate_layout(bad), LayoutError);
}

TEST(LayoutLoss, CountMismatchIsAnError) {
    const std::vector<PanelAttributes> p = {{0.5, 1.0}};
    const auto t = LayoutTree::split(Orientation::Vertical, 0.5, LayoutTree::leaf(0),
                                     LayoutTree::leaf(1), Rect{});
    EXPECT_THROW(layout_loss(p, t), LayoutError);
}

TEST(LayoutLoss, MatchesSearchAccountingOnRandomK4) {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 20; ++trial) {
        const auto p = random_panels(4, rng);
        const auto r = generate_layout(p);
        EXPECT_NEAR(layout_loss(p, r.tree), r.loss, 1e-12);
    }
}

TEST(TreeRects, SingleLeafAndAreaSum) {
    const Rect page{0, 0, 1, 1};
    EXPECT_DOUBLE_EQ(tree_rects(LayoutTree::leaf(0, page))[0].area(), 1.0);
    const auto t = LayoutTree::split(
        Orientation::Horizontal, 0.3, LayoutTree::leaf(0),
        LayoutTree::split(Orientation::Vertical, 0.6, LayoutTree::leaf(1), LayoutTree::leaf(2)),
        page);
    double sum = 0.0;
    for (const auto& r : tree_rects(t)) sum += r.area();
    EXPECT_NEAR(sum, 1.0, 1e-9);
}

TEST(TreeRects, RejectsDuplicateIndices) {
    const auto t = LayoutTree::split(Orientation::Vertical, 0.5, LayoutTree::leaf(0),
                                     LayoutTree::leaf(0), Rect{});
    EXPECT_THROW(tree_rects(t), LayoutError);
}

TEST(GenerateLayout, MatchesBruteForceEnumeration) {
    std::mt19937_64 rng(2024);
    for (std::size_t k = 1; k <= 6; ++k) {
        for (int trial = 0; trial < 50; ++trial) {
            const auto p = random_panels(k, rng);
            std::vector<double> sizes, aspects;
            for (const auto& x : p) {
                sizes.push_back(x.size);
                aspects.push_back(x.aspect);
            }
            const auto brute = oracle::brute_force_layout(sizes, aspects);
            EXPECT_EQ(brute.count, oracle::catalan(k - 1) << (k - 1));
            EXPECT_NEAR(generate_layout(p).loss, brute.best_loss, 1e-9) << "k=" << k;
        }
    }
    EXPECT_EQ(oracle::catalan(3) << 3, 40u);
}

// Area fidelity, read order and exact tiling on random instances, including
// a non-unit panel area below a title strip.
TEST(GenerateLayout, GeometryInvariantsProperty) {
    std::mt19937_64 rng(99);
    const Rect area{0.0, 0.1, 1.0, 0.9};
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t k = 1 + trial % 8;
        const auto p = random_panels(k, rng);
        const auto norm = normalize_sizes(p);
        const auto r = generate_layout(p, area);
        std::vector<int> order;
        r.tree.for_each_leaf([&](const LayoutTree& leaf) { order.push_back(leaf.panel_index); });
        for (std::size_t i = 0; i < k; ++i) EXPECT_EQ(order[i], static_cast<int>(i));
        const auto rects = tree_rects(r.tree);
        double sum = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            EXPECT_NEAR(rects[i].area() / area.area(), norm[i].size, 1e-9);
            EXPECT_GE(rects[i].x, area.x - 1e-12);
            EXPECT_GE(rects[i].y, area.y - 1e-12);
            EXPECT_LE(rects[i].right(), 1.0 + 1e-9);
            EXPECT_LE(rects[i].bottom(), 1.0 + 1e-9);
            sum += rects[i].area();
            for (std::size_t j = i + 1; j < k; ++j)
                EXPECT_FALSE(interiors_overlap(rects[i], rects[j]));
        }
        EXPECT_NEAR(sum, area.area(), 1e-9);
        expect_tiles(r.tree);
        EXPECT_EQ(generate_layout(p, area).loss, r.loss);
    }
}

TEST(GenerateLayout, TenPanelsUnderOneSecond) {
    std::mt19937_64 rng(10);
    const auto p = random_panels(10, rng);
    const auto t0 = std::chrono::steady_clock::now();
    generate_layout(p);
    const double s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    EXPECT_LT(s, 1.0);
}

TEST(LayoutDump, SerializesTree) {
    const auto r = generate_layout(five_panel_example());
    const auto j = layout_to_json(r.tree);
    EXPECT_EQ(j["split"], "vertical");
    EXPECT_EQ(j["second"]["first"]["panel"], 3);
    EXPECT_EQ(j["second"]["second"]["panel"], 4);
    EXPECT_EQ(j["rect"].size(), 4u);
}
