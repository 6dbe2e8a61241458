#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "widecal/common.hpp"
#include "widecal/tag_family.hpp"

namespace widecal {

// AprilGrid-style calibration board: rows x cols square tags separated by a
// gap of tag_size * tag_spacing, with small dark squares at every tag-corner
// junction so that each feature is a point-symmetric X-junction.
struct BoardSpec {
  int rows = 6;
  int cols = 6;
  double tag_size = 0.088;    // meters, tag outer edge
  double tag_spacing = 0.3;   // gap as a fraction of tag_size
  int family_bits = kFamilyBits;
  std::vector<int> tag_ids;   // row-major; defaults to 0..rows*cols-1

  void finalize() {
    if (rows <= 0 || cols <= 0) throw ConfigError("board needs positive rows and cols");
    if (!(tag_size > 0.0)) throw ConfigError("tag_size must be positive");
    if (tag_spacing < 0.0 || tag_spacing >= 1.0)
      throw ConfigError("tag_spacing must lie in [0, 1)");
    if (family_bits != kFamilyBits)
      throw ConfigError("only the built-in 36-bit family is supported");
    if (tag_ids.empty()) {
      tag_ids.resize(static_cast<size_t>(rows) * cols);
      for (size_t i = 0; i < tag_ids.size(); ++i) tag_ids[i] = static_cast<int>(i);
    }
    if (static_cast<int>(tag_ids.size()) != rows * cols)
      throw ConfigError("tag_ids must list rows*cols entries");
    std::set<int> distinct(tag_ids.begin(), tag_ids.end());
    if (static_cast<int>(distinct.size()) != rows * cols)
      throw ConfigError("tag_ids must be distinct");
    for (int id : tag_ids)
      if (id < 0 || id >= static_cast<int>(kFamilyCodes.size()))
        throw ConfigError("tag id outside the built-in family");
  }

  double pitch() const { return tag_size * (1.0 + tag_spacing); }
  double gap() const { return tag_size * tag_spacing; }
  int num_tags() const { return rows * cols; }
  int num_points() const { return 4 * rows * cols; }
  // Extent of the tag area; junction squares stick out by gap() on each side.
  double width() const { return cols * pitch() - gap(); }
  double height() const { return rows * pitch() - gap(); }

  int tag_index_of_id(int id) const {
    for (size_t i = 0; i < tag_ids.size(); ++i)
      if (tag_ids[i] == id) return static_cast<int>(i);
    return -1;
  }
};

// Identifies one corner feature: tag position on the board plus the corner
// number (0 = lower-left, counter-clockwise in the target frame).
struct BoardPointIndex {
  int tag_row = 0;
  int tag_col = 0;
  int corner = 0;

  int linear(const BoardSpec& spec) const {
    return (tag_row * spec.cols + tag_col) * 4 + corner;
  }
  static BoardPointIndex from_linear(const BoardSpec& spec, int lin) {
    return {lin / 4 / spec.cols, (lin / 4) % spec.cols, lin % 4};
  }
  bool operator==(const BoardPointIndex&) const = default;
};

struct BoardPoint {
  BoardPointIndex index;
  Vec3 position;  // target frame, z = 0
};

// All 4*rows*cols corner features; origin at the outer lower-left tag corner.
inline std::vector<BoardPoint> board_points(const BoardSpec& spec) {
  std::vector<BoardPoint> pts;
  pts.reserve(spec.num_points());
  double p = spec.pitch();
  double ts = spec.tag_size;
  for (int r = 0; r < spec.rows; ++r) {
    for (int c = 0; c < spec.cols; ++c) {
      double x0 = c * p;
      double y0 = r * p;
      const Vec3 corners[4] = {{x0, y0, 0.0},
                               {x0 + ts, y0, 0.0},
                               {x0 + ts, y0 + ts, 0.0},
                               {x0, y0 + ts, 0.0}};
      for (int k = 0; k < 4; ++k) pts.push_back({{r, c, k}, corners[k]});
    }
  }
  return pts;
}

struct TagPayload {
  int id = -1;
  // bits[row][col]; row 0 is the top of the tag (max y), col 0 the left.
  // 1 = white cell, 0 = black cell.
  std::array<std::array<uint8_t, kFamilyBits>, kFamilyBits> bits{};
};

inline TagPayload payload_bits(int id) {
  TagPayload p;
  p.id = id;
  uint64_t code = kFamilyCodes[static_cast<size_t>(id)];
  for (int r = 0; r < kFamilyBits; ++r)
    for (int c = 0; c < kFamilyBits; ++c)
      p.bits[r][c] =
          static_cast<uint8_t>((code >> (kFamilyBits * kFamilyBits - 1 - (r * kFamilyBits + c))) & 1u);
  return p;
}

inline TagPayload payload_for(const BoardSpec& spec, int id) {
  if (spec.tag_index_of_id(id) < 0) throw UnknownTag("tag id is not on this board");
  return payload_bits(id);
}

// 90-degree counter-clockwise rotation of a payload matrix.
inline TagPayload rotate_payload(const TagPayload& p) {
  TagPayload out;
  out.id = p.id;
  for (int r = 0; r < kFamilyBits; ++r)
    for (int c = 0; c < kFamilyBits; ++c) out.bits[r][c] = p.bits[c][kFamilyBits - 1 - r];
  return out;
}

inline uint64_t payload_code(const TagPayload& p) {
  uint64_t code = 0;
  for (int r = 0; r < kFamilyBits; ++r)
    for (int c = 0; c < kFamilyBits; ++c) code = (code << 1) | p.bits[r][c];
  return code;
}

struct DecodeMatch {
  int id = -1;
  int rotation = 0;  // CCW quarter turns applied to the sampled payload
  int hamming = 99;
};

// Match a sampled payload against the family over all four rotations.
inline std::optional<DecodeMatch> decode_payload(const TagPayload& sampled,
                                                 int max_hamming = kFamilyMaxHamming) {
  DecodeMatch best;
  TagPayload rot = sampled;
  for (int r = 0; r < 4; ++r) {
    uint64_t word = payload_code(rot);
    for (size_t id = 0; id < kFamilyCodes.size(); ++id) {
      int h = std::popcount(word ^ kFamilyCodes[id]);
      if (h < best.hamming) best = {static_cast<int>(id), r, h};
    }
    rot = rotate_payload(rot);
  }
  if (best.hamming > max_hamming) return std::nullopt;
  return best;
}

// Board reflectance at a target-plane point: 0 = black ink, 1 = white.
// Covers tag borders, payload cells, and the junction squares.
inline double board_albedo(const BoardSpec& spec, double x, double y) {
  double p = spec.pitch();
  double ts = spec.tag_size;
  double g = spec.gap();

  // junction squares: [j*p - g, j*p] x [i*p - g, i*p], 0 <= j <= cols, 0 <= i <= rows
  if (g > 0.0) {
    auto in_spacer = [&](double v, int count) {
      if (v < -g || v >= count * p) return false;
      double frac = v / p - std::floor(v / p);
      return frac >= 1.0 - g / p;
    };
    if (in_spacer(x, spec.cols) && in_spacer(y, spec.rows)) return 0.0;
  }

  if (x < 0.0 || y < 0.0) return 1.0;
  int c = static_cast<int>(std::floor(x / p));
  int r = static_cast<int>(std::floor(y / p));
  if (c >= spec.cols || r >= spec.rows) return 1.0;
  double lx = x - c * p;
  double ly = y - r * p;
  if (lx >= ts || ly >= ts) return 1.0;  // inter-tag gap

  int cells = spec.family_bits + 2;
  double cell = ts / cells;
  int cc = std::min(static_cast<int>(lx / cell), cells - 1);
  int cr = std::min(static_cast<int>(ly / cell), cells - 1);
  if (cc == 0 || cr == 0 || cc == cells - 1 || cr == cells - 1) return 0.0;  // border

  TagPayload payload = payload_bits(spec.tag_ids[static_cast<size_t>(r) * spec.cols + c]);
  // cr counts cells from the tag bottom; payload row 0 is the top row
  int bit_row = spec.family_bits - 1 - (cr - 1);
  int bit_col = cc - 1;
  return payload.bits[bit_row][bit_col] ? 1.0 : 0.0;
}

}  // namespace widecal
