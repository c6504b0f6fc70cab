#include <gtest/gtest.h>

#include "scha/render.hpp"
#include "support/fixtures.hpp"

namespace scha {
namespace {

using namespace scha::testing;

std::size_t occurrences(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (auto p = s.find(needle); p != std::string::npos; p = s.find(needle, p + needle.size())) ++n;
  return n;
}

const VoiceRender& soprano(const RenderModel& m) { return m.voices[static_cast<std::size_t>(Part::Soprano)]; }

TEST(RenderModel, FixtureABeams) {
  const auto m = derive_render_model(fixture_a());
  EXPECT_EQ(soprano(m).beams, (std::vector<Beam>{{1, 0, 1}, {1, 3, 4}, {2, 3, 4}}));
}

TEST(RenderModel, FixtureASlurs) {
  const auto m = derive_render_model(fixture_a());
  EXPECT_EQ(soprano(m).slurs, (std::vector<Slur>{{1, 3, 1}, {0, 3, 2}, {0, 4, 3}}));
}

TEST(RenderModel, StemLengthGrowsWithDepth) {
  const auto m = derive_render_model(fixture_a());
  ASSERT_EQ(soprano(m).notes.size(), 5u);
  const std::vector<int> depths{3, 1, 0, 2, 3};
  for (std::size_t i = 0; i < 5; ++i) {
    EXPECT_EQ(soprano(m).notes[i].depth, depths[i]);
    EXPECT_EQ(soprano(m).notes[i].stemLength, layout::kStemBase + layout::kStemPerDepth * depths[i]);
  }
  EXPECT_EQ(soprano(m).notes[0].staffPosition, 5);
}

TEST(RenderModel, InnerVoicesHaveNoBeamsOrSlurs) {
  const auto m = derive_render_model(fixture_b());
  const auto& alto = m.voices[static_cast<std::size_t>(Part::Alto)];
  EXPECT_EQ(alto.notes.size(), 1u);
  EXPECT_TRUE(alto.beams.empty());
  EXPECT_TRUE(alto.slurs.empty());
}

TEST(RenderModel, BeamsSkipRestsButNotHolds) {
  const Analysis a = make_analysis({make_voice(Part::Soprano, {"C5", "_", "D5", "R", "E5"}, {1, -1, 1, -1, 1})}, 5);
  const auto m = derive_render_model(a);
  EXPECT_EQ(soprano(m).beams, (std::vector<Beam>{{1, 0, 4}}));
}

TEST(RenderSvg, FixtureAElements) {
  const auto svg = render_svg(derive_render_model(fixture_a()));
  EXPECT_EQ(svg.rfind("<?xml", 0), 0u);
  EXPECT_EQ(occurrences(svg, "class=\"notehead\""), 5u);
  EXPECT_EQ(occurrences(svg, "class=\"beam\""), 3u);
  EXPECT_EQ(occurrences(svg, "class=\"slur\""), 3u);
  for (const char* id : {"note-sop-0", "note-sop-4", "beam-sop-1-0-1", "beam-sop-1-3-4", "beam-sop-2-3-4",
                         "slur-sop-1-1-3", "slur-sop-2-0-3", "slur-sop-3-0-4", "stem-sop-2"}) {
    EXPECT_NE(svg.find(std::string("id=\"") + id + "\""), std::string::npos) << id;
  }
}

TEST(RenderSvg, Decorations) {
  Analysis a = fixture_a();
  a.voice(Part::Soprano).slots[2].parenthesized = true;
  a.voice(Part::Soprano).slots[1].flagged = true;
  a.voice(Part::Soprano).slots[0].ursatz = true;
  a.crossVoice.push_back({CrossVoiceKind::RelationLine, {Part::Soprano, 0}, {Part::Soprano, 4}});
  const auto svg = render_svg(derive_render_model(a));
  for (const char* id : {"paren-open-sop-2", "paren-close-sop-2", "flag-sop-1", "ursatz-sop-0", "cross-0"}) {
    EXPECT_NE(svg.find(std::string("id=\"") + id + "\""), std::string::npos) << id;
  }
}

TEST(RenderSvg, Deterministic) {
  EXPECT_EQ(render_svg(derive_render_model(fixture_b())), render_svg(derive_render_model(fixture_b())));
}

TEST(RenderSvg, EscapesTitle) {
  Analysis a = fixture_a();
  a.meta.title = "A & <B>";
  const auto svg = render_svg(derive_render_model(a));
  EXPECT_NE(svg.find("A &amp; &lt;B&gt;"), std::string::npos);
}

}  // namespace
}  // namespace scha
