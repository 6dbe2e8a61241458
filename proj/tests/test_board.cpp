#include "widecal/board.hpp"

#include <gtest/gtest.h>

using namespace widecal;

namespace {

BoardSpec make_spec(int rows, int cols, double tag_size = 0.088, double spacing = 0.3) {
  BoardSpec spec;
  spec.rows = rows;
  spec.cols = cols;
  spec.tag_size = tag_size;
  spec.tag_spacing = spacing;
  spec.finalize();
  return spec;
}

}  // namespace

TEST(BoardPoints, SingleUnitTag) {
  auto spec = make_spec(1, 1, 1.0, 0.3);
  auto pts = board_points(spec);
  ASSERT_EQ(pts.size(), 4u);
  EXPECT_EQ(pts[0].position, Vec3(0, 0, 0));
  EXPECT_EQ(pts[1].position, Vec3(1, 0, 0));
  EXPECT_EQ(pts[2].position, Vec3(1, 1, 0));
  EXPECT_EQ(pts[3].position, Vec3(0, 1, 0));
}

TEST(BoardPoints, SixBySixHas144Points) {
  auto spec = make_spec(6, 6);
  EXPECT_EQ(board_points(spec).size(), 144u);
}

TEST(BoardPoints, RowPitch) {
  auto spec = make_spec(2, 1, 0.088, 0.3);
  auto pts = board_points(spec);
  // second tag, corner 0
  const BoardPoint* p = nullptr;
  for (const auto& bp : pts)
    if (bp.index.tag_row == 1 && bp.index.tag_col == 0 && bp.index.corner == 0) p = &bp;
  ASSERT_NE(p, nullptr);
  EXPECT_NEAR(p->position.y(), 0.1144, 1e-12);
  EXPECT_NEAR(p->position.x(), 0.0, 1e-12);
}

TEST(BoardPoints, AllPlanarWithinExtents) {
  auto spec = make_spec(4, 5);
  for (const auto& bp : board_points(spec)) {
    EXPECT_EQ(bp.position.z(), 0.0);
    EXPECT_GE(bp.position.x(), 0.0);
    EXPECT_LE(bp.position.x(), spec.width());
    EXPECT_GE(bp.position.y(), 0.0);
    EXPECT_LE(bp.position.y(), spec.height());
  }
}

TEST(BoardPoints, MinimumPairwiseDistance) {
  auto spec = make_spec(3, 3);
  auto pts = board_points(spec);
  double min_d = 1e9;
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = i + 1; j < pts.size(); ++j)
      min_d = std::min(min_d, (pts[i].position - pts[j].position).norm());
  EXPECT_GE(min_d, spec.tag_size * spec.tag_spacing - 1e-12);
}

TEST(BoardPoints, LinearIndexRoundTrip) {
  auto spec = make_spec(3, 4);
  for (const auto& bp : board_points(spec)) {
    int lin = bp.index.linear(spec);
    EXPECT_EQ(BoardPointIndex::from_linear(spec, lin), bp.index);
  }
}

TEST(Payload, Deterministic) {
  auto spec = make_spec(2, 2);
  auto a = payload_for(spec, 3);
  auto b = payload_for(spec, 3);
  EXPECT_EQ(a.bits, b.bits);
}

TEST(Payload, FirstCodeword) {
  auto spec = make_spec(1, 1);
  auto p = payload_for(spec, 0);
  EXPECT_EQ(payload_code(p), kFamilyCodes[0]);
}

TEST(Payload, UnknownTagThrows) {
  auto spec = make_spec(2, 2);  // ids 0..3
  EXPECT_THROW(payload_for(spec, 17), UnknownTag);
}

TEST(Payload, DecodeExactAndRotated) {
  auto p = payload_bits(7);
  auto m = decode_payload(p);
  ASSERT_TRUE(m.has_value());
  EXPECT_EQ(m->id, 7);
  EXPECT_EQ(m->rotation, 0);
  EXPECT_EQ(m->hamming, 0);

  auto rotated = rotate_payload(rotate_payload(rotate_payload(p)));
  auto mr = decode_payload(rotated);
  ASSERT_TRUE(mr.has_value());
  EXPECT_EQ(mr->id, 7);
  EXPECT_EQ(mr->rotation, 1);  // one more CCW turn restores the canonical code
}

TEST(Payload, DecodeToleratesTwoBitErrors) {
  auto p = payload_bits(12);
  p.bits[0][0] ^= 1;
  p.bits[3][4] ^= 1;
  auto m = decode_payload(p);
  ASSERT_TRUE(m.has_value());
  EXPECT_EQ(m->id, 12);
  EXPECT_EQ(m->hamming, 2);
}

TEST(Payload, AllWhiteFailsDecode) {
  TagPayload p;
  p.bits.fill({1, 1, 1, 1, 1, 1});
  EXPECT_FALSE(decode_payload(p).has_value());
}

TEST(Albedo, TagRegionsAndBackground) {
  auto spec = make_spec(2, 2, 1.0, 0.3);
  // border cell of tag (0,0)
  EXPECT_EQ(board_albedo(spec, 0.05, 0.05), 0.0);
  // gap between tags is white mid-edge
  EXPECT_EQ(board_albedo(spec, 1.15, 0.5), 1.0);
  // far outside the board
  EXPECT_EQ(board_albedo(spec, -5.0, 0.2), 1.0);
  EXPECT_EQ(board_albedo(spec, 0.2, 50.0), 1.0);
}

TEST(Albedo, JunctionSquaresMakeCornersPointSymmetric) {
  auto spec = make_spec(2, 2, 1.0, 0.3);
  auto pts = board_points(spec);
  double eps = 0.05;  // inside both the tag and the junction square
  for (const auto& bp : pts) {
    double x = bp.position.x(), y = bp.position.y();
    for (double dx : {-eps, eps}) {
      for (double dy : {-eps, eps}) {
        EXPECT_EQ(board_albedo(spec, x + dx, y + dy), board_albedo(spec, x - dx, y - dy))
            << "corner at (" << x << "," << y << ") offset (" << dx << "," << dy << ")";
      }
    }
  }
}

TEST(Albedo, PayloadPatternMatchesBits) {
  auto spec = make_spec(1, 1, 0.8, 0.3);
  auto payload = payload_bits(spec.tag_ids[0]);
  double cell = spec.tag_size / (kFamilyBits + 2);
  for (int r = 0; r < kFamilyBits; ++r) {
    for (int c = 0; c < kFamilyBits; ++c) {
      // center of data cell (r, c), r = 0 at the top of the tag
      double x = (c + 1 + 0.5) * cell;
      double y = spec.tag_size - (r + 1 + 0.5) * cell;
      EXPECT_EQ(board_albedo(spec, x, y), payload.bits[r][c] ? 1.0 : 0.0)
          << "cell " << r << "," << c;
    }
  }
}

TEST(BoardSpec, Validation) {
  BoardSpec bad = {};
  bad.rows = 2;
  bad.cols = 2;
  bad.tag_ids = {0, 1, 2};  // wrong count
  EXPECT_THROW(bad.finalize(), ConfigError);

  BoardSpec dup = {};
  dup.rows = 1;
  dup.cols = 2;
  dup.tag_ids = {5, 5};
  EXPECT_THROW(dup.finalize(), ConfigError);

  BoardSpec neg = {};
  neg.tag_size = -1.0;
  EXPECT_THROW(neg.finalize(), ConfigError);
}
