#include <cmath>
#include <random>
#include <string>

#include <gtest/gtest.h>

#include "posterforge/content_model.hpp"
#include "posterforge/summarizer.hpp"
#include "posterforge/synthetic.hpp"
#include "test_paths.hpp"

using namespace posterforge;

namespace {

std::string doc_with_section(const std::string& section) {
    return R"({"title": "t", "sections": [)" + section + "]}";
}

} // namespace

TEST(LoadDocument, SampleFileRoundTrips) {
    const auto doc = load_document_file(test_paths::data("sample_document.json"));
    ASSERT_EQ(doc.sections.size(), 7u);
    EXPECT_EQ(doc.sections[0].title, "Introduction");
    EXPECT_NEAR(doc.page_aspect, 841.0 / 1189.0, 1e-12);
    int figures = 0;
    for (const auto& s : doc.sections) figures += static_cast<int>(s.elements.size());
    EXPECT_EQ(figures, 5);

    const auto again = parse_document(document_to_json(doc));
    ASSERT_EQ(again.sections.size(), doc.sections.size());
    for (std::size_t i = 0; i < doc.sections.size(); ++i) {
        EXPECT_EQ(again.sections[i].sentences, doc.sections[i].sentences);
        EXPECT_EQ(again.sections[i].elements.size(), doc.sections[i].elements.size());
    }
}

TEST(LoadDocument, FiveSectionsThreeFigures) {
    const auto doc = load_document(R"({
      "title": "x", "authors": "y", "page_aspect": 0.7,
      "sections": [
        {"title": "a", "sentences": ["one two."], "elements": [{"id": "f1", "source_width": 0.5, "source_height": 0.5}]},
        {"title": "b", "sentences": ["three four."]},
        {"title": "c", "sentences": ["five."], "elements": [{"id": "f2", "source_width": 0.3, "source_height": 0.2}]},
        {"title": "d", "sentences": ["six."]},
        {"title": "e", "elements": [{"id": "f3", "source_width": 0.9, "source_height": 0.4}]}
      ]})");
    EXPECT_EQ(doc.sections.size(), 5u);
    EXPECT_EQ(doc.sections[4].elements[0].section_index, 4);
    EXPECT_DOUBLE_EQ(doc.sections[1].extraction_ratio, kDefaultExtractionRatio);
}

TEST(LoadDocument, ElementDerivedAttributes) {
    const auto doc = load_document(doc_with_section(
        R"({"sentences": ["s."], "elements": [{"id": "f", "source_width": 0.4, "source_height": 0.2}]})"));
    const auto& e = doc.sections[0].elements[0];
    EXPECT_NEAR(e.size(), 0.08, 1e-15);
    EXPECT_NEAR(e.aspect(), 2.0, 1e-15);
}

TEST(LoadDocument, ZeroExtractionRatioIsRejectedWithPath) {
    try {
        load_document(doc_with_section(R"({"sentences": ["s."], "extraction_ratio": 0})"));
        FAIL() << "expected ValidationError";
    } catch (const ValidationError& e) {
        EXPECT_EQ(e.path(), "$.sections[0].extraction_ratio");
    }
}

TEST(LoadDocument, ValidationErrors) {
    EXPECT_THROW(load_document(R"({"sections": []})"), ValidationError);
    EXPECT_THROW(load_document(doc_with_section(R"({"title": "empty"})")), ValidationError);
    EXPECT_THROW(load_document(doc_with_section(
                     R"({"elements": [{"id": "f", "source_width": 0, "source_height": 0.2}]})")),
                 ValidationError);
    EXPECT_THROW(load_document(doc_with_section(
                     R"({"elements": [{"id": "f", "source_width": 0.2, "source_height": 1.5}]})")),
                 ValidationError);
    EXPECT_THROW(load_document(doc_with_section(
                     R"({"elements": [{"id": "f", "source_width": 0.2, "source_height": 0.2, "section_index": 3}]})")),
                 ValidationError);
    EXPECT_THROW(load_document(R"({"page_aspect": -1, "sections": [{"sentences": ["a"]}]})"),
                 ValidationError);
}

TEST(LoadDocument, MalformedInputIsParseError) {
    EXPECT_THROW(load_document("{\"sections\": [ "), ParseError);
    EXPECT_THROW(load_document("not json"), ParseError);
}

TEST(LoadAnnotated, ParsesPanelsAndElements) {
    const auto a = load_annotated_document(R"({
      "id": "p1", "sections": [
        {"sentences": ["a b."], "panel": {"w_p": 0.5, "h_p": 0.4},
         "elements": [{"id": "f", "source_width": 0.5, "source_height": 0.5, "u_g": 0.8, "h_g": "right"}]}
      ]})",
                                           "fallback");
    EXPECT_EQ(a.id, "p1");
    EXPECT_DOUBLE_EQ(a.panels[0].size(), 0.2);
    EXPECT_DOUBLE_EQ(a.panels[0].aspect(), 1.25);
    EXPECT_EQ(a.elements[0][0].position, HPosition::Right);
    EXPECT_THROW(load_annotated_document(R"({"sections": [{"sentences": ["a"]}]})", "x"),
                 ValidationError);
    EXPECT_THROW(load_annotated_document(
                     R"({"sections": [{"sentences": ["a"], "panel": {"w_p": 0.5, "h_p": 0.4},
                         "elements": [{"id": "f", "source_width": 0.5, "source_height": 0.5, "u_g": 0.5, "h_g": "top"}]}]})",
                     "x"),
                 ValidationError);
}

TEST(LoadAnnotated, SyntheticRoundTrip) {
    std::mt19937_64 rng(3);
    const auto a = synthetic_document("rt", rng);
    const auto b = load_annotated_document(annotated_to_json(a).dump(), "other");
    EXPECT_EQ(b.id, "rt");
    ASSERT_EQ(b.panels.size(), a.panels.size());
    for (std::size_t i = 0; i < a.panels.size(); ++i) {
        EXPECT_DOUBLE_EQ(b.panels[i].width, a.panels[i].width);
        for (std::size_t k = 0; k < a.elements[i].size(); ++k) {
            EXPECT_DOUBLE_EQ(b.elements[i][k].width_ratio, a.elements[i][k].width_ratio);
            EXPECT_EQ(b.elements[i][k].position, a.elements[i][k].position);
        }
    }
}

TEST(BuildPanelContents, TextRatios) {
    DocumentContent doc;
    doc.sections = {Section{"a", {"x"}, 0.2, {}}, Section{"b", {"y"}, 0.2, {}}};
    const auto p = build_panel_contents(doc, {{std::string(300, 'a')}, {std::string(100, 'b')}});
    EXPECT_EQ(p[0].text_length, 300);
    EXPECT_DOUBLE_EQ(p[0].text_ratio, 0.75);
    EXPECT_DOUBLE_EQ(p[1].text_ratio, 0.25);
    EXPECT_EQ(p[0].graphic_ratio, 0.0);
    EXPECT_EQ(p[1].graphic_ratio, 0.0);
}

TEST(BuildPanelContents, SingleFigureOwnsAllGraphicRatio) {
    DocumentContent doc;
    doc.sections = {Section{"a", {"x"}, 0.2, {{"f", 0.5, 0.5, 0, ""}}}, Section{"b", {"y"}, 0.2, {}}};
    const auto p = build_panel_contents(doc, {{"x"}, {"y"}});
    EXPECT_DOUBLE_EQ(p[0].graphic_ratio, 1.0);
    EXPECT_DOUBLE_EQ(p[1].graphic_ratio, 0.0);
}

TEST(BuildPanelContents, GraphicRatiosFromElementSizes) {
    DocumentContent doc;
    doc.sections = {Section{"a", {"x"}, 0.2, {{"f1", 0.4, 0.2, 0, ""}}},
                    Section{"b", {"y"}, 0.2, {}},
                    Section{"c", {"z"}, 0.2, {{"f2", 0.1, 0.2, 2, ""}}}};
    const auto p = build_panel_contents(doc, {{"x"}, {"y"}, {"z"}});
    EXPECT_NEAR(p[0].graphic_ratio, 0.8, 1e-12);
    EXPECT_NEAR(p[1].graphic_ratio, 0.0, 1e-12);
    EXPECT_NEAR(p[2].graphic_ratio, 0.2, 1e-12);
}

TEST(BuildPanelContents, CountsCodePointsNotBytes) {
    DocumentContent doc;
    doc.sections = {Section{"a", {"x"}, 0.2, {}}};
    const auto p = build_panel_contents(doc, {{"\xc3\xa9t\xc3\xa9"}}); // "été"
    EXPECT_EQ(p[0].text_length, 3);
}

TEST(BuildPanelContents, Errors) {
    DocumentContent doc;
    doc.sections = {Section{"a", {"x"}, 0.2, {}}};
    EXPECT_THROW(build_panel_contents(doc, {}), InputError);
    EXPECT_THROW(build_panel_contents(doc, {{}}), InputError); // no text, no elements
}

// Ratios sum to one and panel i is section i, for random documents.
TEST(BuildPanelContents, SumInvariantsProperty) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        const auto a = synthetic_document("p" + std::to_string(trial), rng);
        const auto summaries = summarize_document(a.content);
        const auto panels = build_panel_contents(a.content, summaries);
        double st = 0.0, sg = 0.0;
        for (std::size_t i = 0; i < panels.size(); ++i) {
            EXPECT_EQ(panels[i].section_index, static_cast<int>(i));
            EXPECT_EQ(panels[i].text_items, summaries[i]);
            st += panels[i].text_ratio;
            sg += panels[i].graphic_ratio;
            if (panels[i].elements.empty()) {
                EXPECT_EQ(panels[i].graphic_ratio, 0.0);
            }
        }
        EXPECT_NEAR(st, 1.0, 1e-9);
        EXPECT_NEAR(sg, 1.0, 1e-9);
        EXPECT_EQ(build_panel_contents(a.content, summaries)[0].text_ratio, panels[0].text_ratio);
    }
}
