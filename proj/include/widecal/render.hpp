#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "widecal/board.hpp"
#include "widecal/camera.hpp"
#include "widecal/common.hpp"
#include "widecal/image.hpp"
#include "widecal/pose.hpp"

namespace widecal {

// Ground-truth scene renderer: ray-traces a planar pattern (the calibration
// board by default) through a camera model, with supersampling, Gaussian
// blur, and additive noise. Serves as the verification oracle in place of
// human-annotated feature locations.
struct SceneSpec {
  double noise_sigma = 0.0;   // intensity units
  double blur_sigma = 0.5;    // pixels
  int supersample = 4;        // jittered rays per pixel axis
  double white_level = 0.9;
  double black_level = 0.1;
  uint64_t seed = 1;

  void validate() const {
    if (supersample < 1) throw ConfigError("supersample must be >= 1");
    if (noise_sigma < 0.0) throw ConfigError("noise_sigma must be >= 0");
  }
};

struct GroundTruthPoint {
  BoardPointIndex index;
  Vec2 pixel;
};

struct RenderedFrame {
  GrayImage image;
  std::vector<GroundTruthPoint> truth;
  int unprojectable_pixels = 0;
};

using PlaneAlbedo = std::function<double(double, double)>;

// Render an arbitrary pattern living on the target plane z = 0.
inline RenderedFrame render_plane(const PlaneAlbedo& albedo, const Pose& pose,
                                  const CameraModel& model, const SceneSpec& spec) {
  spec.validate();
  RenderedFrame out;
  out.image = GrayImage(model.width(), model.height());

  Pose inv = pose.inverse();
  Mat3 rt = inv.matrix();
  Vec3 origin_t = inv.translation;  // camera center in target frame
  // The pattern is only visible from the +z side of the plane.
  bool pattern_visible = origin_t.z() > 0.0;
  double contrast = spec.white_level - spec.black_level;

  std::vector<int> row_unprojectable(model.height(), 0);
  parallel_for(model.height(), [&](size_t yi) {
    int y = static_cast<int>(yi);
    Rng rng(spec.seed * 0x9e3779b9ull + 0x51ull * y + 17ull);
    int s = spec.supersample;
    for (int x = 0; x < model.width(); ++x) {
      double acc = 0.0;
      int n = 0;
      for (int sy = 0; sy < s; ++sy) {
        for (int sx = 0; sx < s; ++sx) {
          double jx = s == 1 ? 0.5 : rng.uniform();
          double jy = s == 1 ? 0.5 : rng.uniform();
          Vec2 p(x - 0.5 + (sx + jx) / s, y - 0.5 + (sy + jy) / s);
          auto b = model.try_unproject(p);
          double value = 1.0;  // background
          if (!b) {
            ++row_unprojectable[y];
          } else if (pattern_visible) {
            Vec3 dir = rt * (*b);
            if (std::abs(dir.z()) > 1e-12) {
              double lambda = -origin_t.z() / dir.z();
              if (lambda > 0.0) {
                Vec3 hit = origin_t + lambda * dir;
                value = albedo(hit.x(), hit.y());
              }
            }
          }
          acc += value;
          ++n;
        }
      }
      out.image.at(x, y) =
          static_cast<float>(spec.black_level + contrast * (acc / n));
    }
  });
  for (int c : row_unprojectable) out.unprojectable_pixels += c;

  if (spec.blur_sigma > 0.0) out.image = gaussian_blur(out.image, spec.blur_sigma);
  if (spec.noise_sigma > 0.0) {
    Rng rng(spec.seed ^ 0xabcdef1234ull);
    for (auto& v : out.image.data) {
      double noisy = v + spec.noise_sigma * rng.normal();
      v = static_cast<float>(std::clamp(noisy, 0.0, 1.0));
    }
  }
  return out;
}

// Exact corner projections for the visible part of the board: point must be
// in the model's domain, inside the image, and on the camera-facing side of
// the plane.
inline std::vector<GroundTruthPoint> project_board_truth(const BoardSpec& board,
                                                         const Pose& pose,
                                                         const CameraModel& model) {
  std::vector<GroundTruthPoint> truth;
  Pose inv = pose.inverse();
  bool camera_in_front = inv.translation.z() > 0.0;
  if (!camera_in_front) return truth;
  for (const auto& bp : board_points(board)) {
    Vec3 xc = pose.apply(bp.position);
    auto u = model.try_project(xc);
    if (!u || !model.in_image(*u)) continue;
    truth.push_back({bp.index, *u});
  }
  return truth;
}

inline RenderedFrame render_frame(const BoardSpec& board, const Pose& pose,
                                  const CameraModel& model, const SceneSpec& spec) {
  RenderedFrame out = render_plane(
      [&board](double x, double y) { return board_albedo(board, x, y); }, pose, model, spec);
  out.truth = project_board_truth(board, pose, model);
  return out;
}

enum class Coverage { kCenterOnly, kFullFov };

struct SyntheticDataset {
  std::vector<Pose> poses;
  std::vector<RenderedFrame> frames;
};

// Orientation that points the board normal back toward the camera along the
// view direction `dir`, with a tilt/roll perturbation.
inline Pose pose_facing(const Vec3& board_center, const Vec3& dir, double distance,
                        double tilt, double tilt_azimuth, double roll) {
  // Basis with z along -dir (board +z normal faces the camera).
  Vec3 z = -dir.normalized();
  Vec3 up = std::abs(z.z()) > 0.95 ? Vec3(0, 1, 0) : Vec3(0, 0, 1);
  Vec3 xaxis = up.cross(z).normalized();
  Vec3 yaxis = z.cross(xaxis);
  Mat3 base;
  base.col(0) = xaxis;
  base.col(1) = yaxis;
  base.col(2) = z;
  Mat3 perturb = so3_exp(tilt * (std::cos(tilt_azimuth) * Vec3::UnitX() +
                                 std::sin(tilt_azimuth) * Vec3::UnitY()));
  Mat3 rot = base * perturb * so3_exp(roll * Vec3::UnitZ());
  Quat q(rot);
  Vec3 t = distance * dir.normalized() - rot * board_center;
  return {q.normalized(), t};
}

// Deterministic pose sampling. kFullFov sweeps the view direction out to the
// model's polar limit so board corners reach the edge bins; kCenterOnly
// keeps every corner below 40 degrees.
inline std::vector<Pose> sample_dataset_poses(const BoardSpec& board, const CameraModel& model,
                                              int n_frames, Coverage coverage,
                                              uint64_t seed = 1) {
  if (n_frames < 1) throw ConfigError("n_frames must be >= 1");
  Rng rng(seed);
  std::vector<Pose> poses;
  poses.reserve(n_frames);
  Vec3 center(board.width() / 2.0, board.height() / 2.0, 0.0);
  double board_diag = std::hypot(board.width(), board.height());
  double max_polar = model.max_polar_angle();

  for (int i = 0; i < n_frames; ++i) {
    for (int attempt = 0; attempt < 64; ++attempt) {
      double frac = n_frames == 1 ? 0.0 : static_cast<double>(i) / (n_frames - 1);
      double theta_c, dist_scale;
      if (coverage == Coverage::kCenterOnly) {
        theta_c = frac * deg2rad(25.0) * rng.uniform(0.6, 1.0);
        dist_scale = rng.uniform(1.2, 2.2);
      } else {
        // sweep outward; the last third pushes the board across the FOV edge
        theta_c = frac * (max_polar - deg2rad(8.0)) * rng.uniform(0.92, 1.0);
        dist_scale = rng.uniform(0.9, 1.6);
      }
      double azimuth = rng.uniform(0.0, 2.0 * kPi);
      Vec3 dir(std::sin(theta_c) * std::cos(azimuth), std::sin(theta_c) * std::sin(azimuth),
               std::cos(theta_c));
      double distance = dist_scale * board_diag;
      double tilt = rng.uniform(0.0, deg2rad(30.0));
      double tilt_az = rng.uniform(0.0, 2.0 * kPi);
      double roll = rng.uniform(0.0, 2.0 * kPi);
      Pose pose = pose_facing(center, dir, distance, tilt, tilt_az, roll);

      auto truth = project_board_truth(board, pose, model);
      if (truth.size() < 8) continue;
      if (coverage == Coverage::kCenterOnly) {
        bool ok = true;
        for (const auto& gt : truth)
          if (model.polar_angle_deg(gt.pixel) >= 40.0) ok = false;
        if (!ok) continue;
      }
      poses.push_back(pose);
      break;
    }
    if (static_cast<int>(poses.size()) != i + 1)
      throw ConfigError("could not place the board for the requested coverage");
  }
  return poses;
}

inline SyntheticDataset make_dataset(const BoardSpec& board, const CameraModel& model,
                                     int n_frames, Coverage coverage, const SceneSpec& scene) {
  SyntheticDataset ds;
  ds.poses = sample_dataset_poses(board, model, n_frames, coverage, scene.seed);
  ds.frames.resize(ds.poses.size());
  for (size_t i = 0; i < ds.poses.size(); ++i) {
    SceneSpec frame_spec = scene;
    frame_spec.seed = scene.seed + 1000003ull * (i + 1);
    ds.frames[i] = render_frame(board, ds.poses[i], model, frame_spec);
  }
  return ds;
}

}  // namespace widecal
