#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <optional>
#include <string>
#include <variant>

#include "widecal/common.hpp"

namespace widecal {

// Parametric camera models. Each variant provides a closed-form projection
// onto the pixel plane, an unprojection onto the unit sphere, and analytic
// Jacobians of the projection w.r.t. the 3D point and the parameter block.
//
// Parameter block layouts (serialization order):
//   pinhole         [fx, fy, cx, cy]
//   double_sphere   [fx, fy, cx, cy, xi, alpha]
//   kannala_brandt  [fx, fy, cx, cy, k1, k2, k3, k4]
//   omni_radtan     [xi, fx, fy, cx, cy, k1, k2, p1, p2]

struct PinholeParams {
  double fx, fy, cx, cy;
  static constexpr int kNumParams = 4;
};

struct DoubleSphereParams {
  double fx, fy, cx, cy, xi, alpha;
  static constexpr int kNumParams = 6;
};

struct KannalaBrandtParams {
  double fx, fy, cx, cy, k1, k2, k3, k4;
  // Domain limit: incidence angles beyond max_theta are outside the
  // invertible region. Not part of the parameter block.
  double max_theta = deg2rad(100.0);
  static constexpr int kNumParams = 8;

  double distort(double theta) const {
    double t2 = theta * theta;
    return theta * (1.0 + t2 * (k1 + t2 * (k2 + t2 * (k3 + t2 * k4))));
  }
  double distort_deriv(double theta) const {
    double t2 = theta * theta;
    return 1.0 + t2 * (3.0 * k1 + t2 * (5.0 * k2 + t2 * (7.0 * k3 + t2 * 9.0 * k4)));
  }
};

struct OmniRadtanParams {
  double xi, fx, fy, cx, cy, k1, k2, p1, p2;
  static constexpr int kNumParams = 9;
};

namespace detail {

constexpr double kMinDepth = 1e-9;

// ---- pinhole ----

inline std::optional<Vec2> project(const PinholeParams& p, const Vec3& x) {
  if (!(x.z() > kMinDepth)) return std::nullopt;
  return Vec2(p.fx * x.x() / x.z() + p.cx, p.fy * x.y() / x.z() + p.cy);
}

inline std::optional<Vec3> unproject(const PinholeParams& p, const Vec2& u) {
  Vec3 b((u.x() - p.cx) / p.fx, (u.y() - p.cy) / p.fy, 1.0);
  return b.normalized();
}

inline bool project_jacobians(const PinholeParams& p, const Vec3& x, Mat23& j_point,
                              Eigen::Matrix<double, 2, Eigen::Dynamic>& j_params) {
  if (!(x.z() > kMinDepth)) return false;
  double iz = 1.0 / x.z();
  j_point << p.fx * iz, 0.0, -p.fx * x.x() * iz * iz,
             0.0, p.fy * iz, -p.fy * x.y() * iz * iz;
  j_params.setZero(2, PinholeParams::kNumParams);
  j_params(0, 0) = x.x() * iz;
  j_params(1, 1) = x.y() * iz;
  j_params(0, 2) = 1.0;
  j_params(1, 3) = 1.0;
  return true;
}

// ---- double sphere ----

// Valid iff z > -w2 * d1 (the cited model's w-condition).
inline double ds_w2(const DoubleSphereParams& p) {
  double w1 = p.alpha <= 0.5 ? p.alpha / (1.0 - p.alpha) : (1.0 - p.alpha) / p.alpha;
  return (w1 + p.xi) / std::sqrt(2.0 * w1 * p.xi + p.xi * p.xi + 1.0);
}

inline std::optional<Vec2> project(const DoubleSphereParams& p, const Vec3& x) {
  double r2 = x.x() * x.x() + x.y() * x.y();
  double d1 = std::sqrt(r2 + x.z() * x.z());
  if (!(x.z() > -ds_w2(p) * d1)) return std::nullopt;
  double zeta = p.xi * d1 + x.z();
  double d2 = std::sqrt(r2 + zeta * zeta);
  double denom = p.alpha * d2 + (1.0 - p.alpha) * zeta;
  if (!(denom > kMinDepth)) return std::nullopt;
  return Vec2(p.fx * x.x() / denom + p.cx, p.fy * x.y() / denom + p.cy);
}

inline std::optional<Vec3> unproject(const DoubleSphereParams& p, const Vec2& u) {
  double mx = (u.x() - p.cx) / p.fx;
  double my = (u.y() - p.cy) / p.fy;
  double r2 = mx * mx + my * my;
  if (p.alpha > 0.5 && r2 > 1.0 / (2.0 * p.alpha - 1.0)) return std::nullopt;
  double under = 1.0 - (2.0 * p.alpha - 1.0) * r2;
  if (under < 0.0) return std::nullopt;
  double mz = (1.0 - p.alpha * p.alpha * r2) / (p.alpha * std::sqrt(under) + 1.0 - p.alpha);
  double mz2 = mz * mz;
  double inner = mz2 + (1.0 - p.xi * p.xi) * r2;
  if (inner < 0.0) return std::nullopt;
  double k = (mz * p.xi + std::sqrt(inner)) / (mz2 + r2);
  Vec3 b(k * mx, k * my, k * mz - p.xi);
  return b.normalized();
}

inline bool project_jacobians(const DoubleSphereParams& p, const Vec3& x, Mat23& j_point,
                              Eigen::Matrix<double, 2, Eigen::Dynamic>& j_params) {
  double r2 = x.x() * x.x() + x.y() * x.y();
  double d1 = std::sqrt(r2 + x.z() * x.z());
  if (!(x.z() > -ds_w2(p) * d1)) return false;
  double zeta = p.xi * d1 + x.z();
  double d2 = std::sqrt(r2 + zeta * zeta);
  double denom = p.alpha * d2 + (1.0 - p.alpha) * zeta;
  if (!(denom > kMinDepth)) return false;

  Vec3 dd1 = x / d1;                               // d d1 / dx
  Vec3 dzeta = p.xi * dd1 + Vec3(0.0, 0.0, 1.0);   // d zeta / dx
  Vec3 dd2 = (Vec3(x.x(), x.y(), 0.0) + zeta * dzeta) / d2;
  Vec3 ddenom = p.alpha * dd2 + (1.0 - p.alpha) * dzeta;

  double inv = 1.0 / denom;
  double inv2 = inv * inv;
  for (int c = 0; c < 3; ++c) {
    double ex = c == 0 ? 1.0 : 0.0;
    double ey = c == 1 ? 1.0 : 0.0;
    j_point(0, c) = p.fx * (ex * denom - x.x() * ddenom[c]) * inv2;
    j_point(1, c) = p.fy * (ey * denom - x.y() * ddenom[c]) * inv2;
  }

  j_params.setZero(2, DoubleSphereParams::kNumParams);
  j_params(0, 0) = x.x() * inv;
  j_params(1, 1) = x.y() * inv;
  j_params(0, 2) = 1.0;
  j_params(1, 3) = 1.0;
  double ddenom_dxi = p.alpha * zeta * d1 / d2 + (1.0 - p.alpha) * d1;
  double ddenom_dalpha = d2 - zeta;
  j_params(0, 4) = -p.fx * x.x() * inv2 * ddenom_dxi;
  j_params(1, 4) = -p.fy * x.y() * inv2 * ddenom_dxi;
  j_params(0, 5) = -p.fx * x.x() * inv2 * ddenom_dalpha;
  j_params(1, 5) = -p.fy * x.y() * inv2 * ddenom_dalpha;
  return true;
}

// ---- kannala-brandt ----

inline std::optional<Vec2> project(const KannalaBrandtParams& p, const Vec3& x) {
  double ru = std::sqrt(x.x() * x.x() + x.y() * x.y());
  double theta = std::atan2(ru, x.z());
  if (!(theta <= p.max_theta)) return std::nullopt;
  double scale;
  if (ru > 1e-12) {
    scale = p.distort(theta) / ru;
  } else {
    if (!(x.z() > kMinDepth)) return std::nullopt;
    scale = 1.0 / x.z();  // small-angle limit of d(theta)/ru
  }
  return Vec2(p.fx * scale * x.x() + p.cx, p.fy * scale * x.y() + p.cy);
}

// Newton solve of d(theta) = r, initial guess theta = r.
inline std::optional<double> kb_invert(const KannalaBrandtParams& p, double r) {
  double theta = r;
  for (int it = 0; it < 20; ++it) {
    double f = p.distort(theta) - r;
    double fp = p.distort_deriv(theta);
    if (!(fp > 0.0)) return std::nullopt;
    double step = f / fp;
    theta -= step;
    if (std::abs(step) < 1e-10) break;
  }
  if (!std::isfinite(theta) || theta < 0.0) return std::nullopt;
  return theta;
}

inline std::optional<Vec3> unproject(const KannalaBrandtParams& p, const Vec2& u) {
  double mx = (u.x() - p.cx) / p.fx;
  double my = (u.y() - p.cy) / p.fy;
  double r = std::sqrt(mx * mx + my * my);
  if (r < 1e-12) return Vec3(0.0, 0.0, 1.0);
  if (r > p.distort(p.max_theta)) return std::nullopt;
  auto theta = kb_invert(p, r);
  if (!theta || *theta > p.max_theta + 1e-9) return std::nullopt;
  double s = std::sin(*theta) / r;
  return Vec3(s * mx, s * my, std::cos(*theta));
}

inline bool project_jacobians(const KannalaBrandtParams& p, const Vec3& x, Mat23& j_point,
                              Eigen::Matrix<double, 2, Eigen::Dynamic>& j_params) {
  double ru = std::sqrt(x.x() * x.x() + x.y() * x.y());
  double theta = std::atan2(ru, x.z());
  if (!(theta <= p.max_theta)) return false;
  j_params.setZero(2, KannalaBrandtParams::kNumParams);

  if (ru < 1e-9) {
    if (!(x.z() > kMinDepth)) return false;
    // Pinhole limit around the principal axis.
    double iz = 1.0 / x.z();
    j_point << p.fx * iz, 0.0, -p.fx * x.x() * iz * iz,
               0.0, p.fy * iz, -p.fy * x.y() * iz * iz;
    j_params(0, 0) = x.x() * iz;
    j_params(1, 1) = x.y() * iz;
    j_params(0, 2) = 1.0;
    j_params(1, 3) = 1.0;
    return true;
  }

  double d = p.distort(theta);
  double dp = p.distort_deriv(theta);
  double d1sq = ru * ru + x.z() * x.z();
  // theta = atan2(ru, z)
  Vec3 dtheta(x.z() * x.x() / (ru * d1sq), x.z() * x.y() / (ru * d1sq), -ru / d1sq);
  Vec3 dru(x.x() / ru, x.y() / ru, 0.0);
  double g = d / ru;
  Vec3 dg = (dp * dtheta * ru - d * dru) / (ru * ru);

  j_point(0, 0) = p.fx * (g + x.x() * dg[0]);
  j_point(0, 1) = p.fx * x.x() * dg[1];
  j_point(0, 2) = p.fx * x.x() * dg[2];
  j_point(1, 0) = p.fy * x.y() * dg[0];
  j_point(1, 1) = p.fy * (g + x.y() * dg[1]);
  j_point(1, 2) = p.fy * x.y() * dg[2];

  j_params(0, 0) = g * x.x();
  j_params(1, 1) = g * x.y();
  j_params(0, 2) = 1.0;
  j_params(1, 3) = 1.0;
  double t2 = theta * theta;
  double powers[4] = {theta * t2, theta * t2 * t2, theta * t2 * t2 * t2,
                      theta * t2 * t2 * t2 * t2};
  for (int i = 0; i < 4; ++i) {
    j_params(0, 4 + i) = p.fx * x.x() / ru * powers[i];
    j_params(1, 4 + i) = p.fy * x.y() / ru * powers[i];
  }
  return true;
}

// ---- omni-radtan (unified sphere model + radial-tangential distortion) ----

inline void omni_distort(const OmniRadtanParams& p, const Vec2& m, Vec2& md, Mat2* jac) {
  double r2 = m.squaredNorm();
  double radial = 1.0 + p.k1 * r2 + p.k2 * r2 * r2;
  md.x() = m.x() * radial + 2.0 * p.p1 * m.x() * m.y() + p.p2 * (r2 + 2.0 * m.x() * m.x());
  md.y() = m.y() * radial + p.p1 * (r2 + 2.0 * m.y() * m.y()) + 2.0 * p.p2 * m.x() * m.y();
  if (jac) {
    double dr = p.k1 + 2.0 * p.k2 * r2;
    (*jac)(0, 0) = radial + 2.0 * m.x() * m.x() * dr + 2.0 * p.p1 * m.y() + 6.0 * p.p2 * m.x();
    (*jac)(0, 1) = 2.0 * m.x() * m.y() * dr + 2.0 * p.p1 * m.x() + 2.0 * p.p2 * m.y();
    (*jac)(1, 0) = 2.0 * m.x() * m.y() * dr + 2.0 * p.p1 * m.x() + 2.0 * p.p2 * m.y();
    (*jac)(1, 1) = radial + 2.0 * m.y() * m.y() * dr + 6.0 * p.p1 * m.y() + 2.0 * p.p2 * m.x();
  }
}

inline std::optional<Vec2> project(const OmniRadtanParams& p, const Vec3& x) {
  double d = x.norm();
  double denom = x.z() + p.xi * d;
  if (!(denom > kMinDepth * std::max(1.0, d))) return std::nullopt;
  Vec2 m(x.x() / denom, x.y() / denom);
  Vec2 md;
  omni_distort(p, m, md, nullptr);
  return Vec2(p.fx * md.x() + p.cx, p.fy * md.y() + p.cy);
}

inline std::optional<Vec3> unproject(const OmniRadtanParams& p, const Vec2& u) {
  Vec2 md((u.x() - p.cx) / p.fx, (u.y() - p.cy) / p.fy);
  // Newton solve of distort(m) = md.
  Vec2 m = md;
  for (int it = 0; it < 25; ++it) {
    Vec2 cur;
    Mat2 jac;
    omni_distort(p, m, cur, &jac);
    Vec2 err = cur - md;
    Vec2 step = jac.inverse() * err;
    m -= step;
    if (step.norm() < 1e-12) break;
  }
  if (!m.allFinite()) return std::nullopt;
  double r2 = m.squaredNorm();
  double under = 1.0 + (1.0 - p.xi * p.xi) * r2;
  if (under < 0.0) return std::nullopt;
  double factor = (p.xi + std::sqrt(under)) / (r2 + 1.0);
  Vec3 b(factor * m.x(), factor * m.y(), factor - p.xi);
  if (b.norm() < 1e-12) return std::nullopt;
  return b.normalized();
}

inline bool project_jacobians(const OmniRadtanParams& p, const Vec3& x, Mat23& j_point,
                              Eigen::Matrix<double, 2, Eigen::Dynamic>& j_params) {
  double d = x.norm();
  double denom = x.z() + p.xi * d;
  if (!(denom > kMinDepth * std::max(1.0, d))) return false;
  Vec2 m(x.x() / denom, x.y() / denom);
  Vec2 md;
  Mat2 jd;
  omni_distort(p, m, md, &jd);

  Vec3 ddenom = p.xi * x / d + Vec3(0.0, 0.0, 1.0);
  double inv = 1.0 / denom;
  double inv2 = inv * inv;
  Mat23 jm;
  for (int c = 0; c < 3; ++c) {
    double ex = c == 0 ? 1.0 : 0.0;
    double ey = c == 1 ? 1.0 : 0.0;
    jm(0, c) = (ex * denom - x.x() * ddenom[c]) * inv2;
    jm(1, c) = (ey * denom - x.y() * ddenom[c]) * inv2;
  }
  Mat2 f = Vec2(p.fx, p.fy).asDiagonal();
  j_point = f * jd * jm;

  j_params.setZero(2, OmniRadtanParams::kNumParams);
  // d m / d xi = -m * d / denom
  Vec2 dm_dxi = -m * d * inv;
  Vec2 duv_dxi = f * jd * dm_dxi;
  j_params(0, 0) = duv_dxi.x();
  j_params(1, 0) = duv_dxi.y();
  j_params(0, 1) = md.x();
  j_params(1, 2) = md.y();
  j_params(0, 3) = 1.0;
  j_params(1, 4) = 1.0;
  double r2 = m.squaredNorm();
  j_params(0, 5) = p.fx * m.x() * r2;
  j_params(1, 5) = p.fy * m.y() * r2;
  j_params(0, 6) = p.fx * m.x() * r2 * r2;
  j_params(1, 6) = p.fy * m.y() * r2 * r2;
  j_params(0, 7) = p.fx * 2.0 * m.x() * m.y();
  j_params(1, 7) = p.fy * (r2 + 2.0 * m.y() * m.y());
  j_params(0, 8) = p.fx * (r2 + 2.0 * m.x() * m.x());
  j_params(1, 8) = p.fy * 2.0 * m.x() * m.y();
  return true;
}

}  // namespace detail

using CameraParams =
    std::variant<PinholeParams, DoubleSphereParams, KannalaBrandtParams, OmniRadtanParams>;

class CameraModel {
 public:
  CameraModel() = default;
  CameraModel(CameraParams params, int width, int height)
      : params_(std::move(params)), width_(width), height_(height) {
    validate();
  }

  const CameraParams& variant() const { return params_; }
  int width() const { return width_; }
  int height() const { return height_; }

  std::string name() const {
    return std::visit(
        [](const auto& p) -> std::string {
          using T = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<T, PinholeParams>) return "pinhole";
          if constexpr (std::is_same_v<T, DoubleSphereParams>) return "double_sphere";
          if constexpr (std::is_same_v<T, KannalaBrandtParams>) return "kannala_brandt";
          if constexpr (std::is_same_v<T, OmniRadtanParams>) return "omni_radtan";
        },
        params_);
  }

  int param_count() const {
    return std::visit([](const auto& p) { return std::decay_t<decltype(p)>::kNumParams; },
                      params_);
  }

  Vec2 principal_point() const {
    return std::visit([](const auto& p) { return Vec2(p.cx, p.cy); }, params_);
  }

  // Parameter block in the documented serialization order.
  Eigen::VectorXd params() const {
    return std::visit(
        [](const auto& p) -> Eigen::VectorXd {
          using T = std::decay_t<decltype(p)>;
          Eigen::VectorXd v(T::kNumParams);
          if constexpr (std::is_same_v<T, PinholeParams>) {
            v << p.fx, p.fy, p.cx, p.cy;
          } else if constexpr (std::is_same_v<T, DoubleSphereParams>) {
            v << p.fx, p.fy, p.cx, p.cy, p.xi, p.alpha;
          } else if constexpr (std::is_same_v<T, KannalaBrandtParams>) {
            v << p.fx, p.fy, p.cx, p.cy, p.k1, p.k2, p.k3, p.k4;
          } else {
            v << p.xi, p.fx, p.fy, p.cx, p.cy, p.k1, p.k2, p.p1, p.p2;
          }
          return v;
        },
        params_);
  }

  // Rebuild with a new parameter block. Focal lengths are floored and alpha
  // clamped so that intermediate solver steps cannot leave the valid set.
  CameraModel with_params(const Eigen::VectorXd& v) const {
    CameraModel out = *this;
    auto pos = [](double f) { return std::max(f, 1e-6); };
    std::visit(
        [&](auto& p) {
          using T = std::decay_t<decltype(p)>;
          if (v.size() != T::kNumParams) throw ConfigError("parameter block size mismatch");
          if constexpr (std::is_same_v<T, PinholeParams>) {
            p = {pos(v[0]), pos(v[1]), v[2], v[3]};
          } else if constexpr (std::is_same_v<T, DoubleSphereParams>) {
            p = {pos(v[0]), pos(v[1]), v[2], v[3], v[4], std::clamp(v[5], 0.0, 1.0)};
          } else if constexpr (std::is_same_v<T, KannalaBrandtParams>) {
            double max_theta = p.max_theta;
            p = {pos(v[0]), pos(v[1]), v[2], v[3], v[4], v[5], v[6], v[7], max_theta};
          } else {
            p = {v[0], pos(v[1]), pos(v[2]), v[3], v[4], v[5], v[6], v[7], v[8]};
          }
        },
        out.params_);
    return out;
  }

  std::optional<Vec2> try_project(const Vec3& x) const {
    if (!x.allFinite() || x.squaredNorm() < 1e-24) return std::nullopt;
    return std::visit([&](const auto& p) { return detail::project(p, x); }, params_);
  }

  std::optional<Vec3> try_unproject(const Vec2& u) const {
    if (!u.allFinite()) return std::nullopt;
    return std::visit([&](const auto& p) { return detail::unproject(p, u); }, params_);
  }

  Vec2 project(const Vec3& x) const {
    auto u = try_project(x);
    if (!u) throw DomainError("point outside the model's valid projection domain");
    return *u;
  }

  Vec3 unproject(const Vec2& u) const {
    auto b = try_unproject(u);
    if (!b) throw DomainError("pixel outside the model's invertible region");
    return *b;
  }

  // Analytic derivatives of project() w.r.t. the point and the parameters.
  bool try_project_jacobians(const Vec3& x, Mat23& j_point,
                             Eigen::Matrix<double, 2, Eigen::Dynamic>& j_params) const {
    return std::visit(
        [&](const auto& p) { return detail::project_jacobians(p, x, j_point, j_params); },
        params_);
  }

  void project_jacobians(const Vec3& x, Mat23& j_point,
                         Eigen::Matrix<double, 2, Eigen::Dynamic>& j_params) const {
    if (!try_project_jacobians(x, j_point, j_params))
      throw DomainError("point outside the model's valid projection domain");
  }

  // Angle between the unprojected bearing and the principal axis, degrees.
  double polar_angle_deg(const Vec2& u) const {
    Vec3 b = unproject(u);
    return rad2deg(std::acos(std::clamp(b.z(), -1.0, 1.0)));
  }

  // Upper bound on the polar angle of projectable bearings.
  double max_polar_angle() const {
    return std::visit(
        [](const auto& p) -> double {
          using T = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<T, PinholeParams>) {
            return deg2rad(89.0);
          } else if constexpr (std::is_same_v<T, DoubleSphereParams>) {
            return std::acos(std::clamp(-detail::ds_w2(p), -1.0, 1.0));
          } else if constexpr (std::is_same_v<T, KannalaBrandtParams>) {
            return p.max_theta;
          } else {
            if (p.xi >= 1.0) return deg2rad(175.0);
            return std::acos(std::clamp(-p.xi, -1.0, 1.0));
          }
        },
        params_);
  }

  bool in_image(const Vec2& u) const {
    return u.x() >= 0.0 && u.x() <= width_ - 1 && u.y() >= 0.0 && u.y() <= height_ - 1;
  }

 private:
  void validate() const {
    if (width_ <= 0 || height_ <= 0) throw ConfigError("image_size must be positive");
    std::visit(
        [](const auto& p) {
          using T = std::decay_t<decltype(p)>;
          if (!(p.fx > 0.0) || !(p.fy > 0.0)) throw ConfigError("focal lengths must be positive");
          if constexpr (std::is_same_v<T, DoubleSphereParams>) {
            if (p.alpha < 0.0 || p.alpha > 1.0) throw ConfigError("alpha must lie in [0, 1]");
          } else if constexpr (std::is_same_v<T, KannalaBrandtParams>) {
            for (int i = 0; i <= 100; ++i) {
              double theta = p.max_theta * i / 100.0;
              if (!(p.distort_deriv(theta) > 0.0))
                throw ConfigError("kannala_brandt polynomial not monotone over the FOV");
            }
          }
        },
        params_);
  }

  CameraParams params_ = PinholeParams{500.0, 500.0, 320.0, 240.0};
  int width_ = 640;
  int height_ = 480;
};

}  // namespace widecal
