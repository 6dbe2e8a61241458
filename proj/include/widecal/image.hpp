#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "widecal/common.hpp"

namespace widecal {

// Grayscale image, row-major float intensities in [0, 1]. Pixel centers sit
// at integer coordinates, so the sampleable area is [0, w-1] x [0, h-1].
struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<float> data;

  GrayImage() = default;
  GrayImage(int w, int h, float fill = 0.0f)
      : width(w), height(h), data(static_cast<size_t>(w) * h, fill) {}

  float& at(int x, int y) { return data[static_cast<size_t>(y) * width + x]; }
  float at(int x, int y) const { return data[static_cast<size_t>(y) * width + x]; }

  bool contains(const Vec2& p) const {
    return p.x() >= 0.0 && p.x() <= width - 1 && p.y() >= 0.0 && p.y() <= height - 1;
  }

  // Bilinear sample; caller guarantees p is inside the image.
  double sample(const Vec2& p) const {
    int x0 = static_cast<int>(std::floor(p.x()));
    int y0 = static_cast<int>(std::floor(p.y()));
    x0 = std::clamp(x0, 0, width - 2);
    y0 = std::clamp(y0, 0, height - 2);
    double fx = p.x() - x0;
    double fy = p.y() - y0;
    double v00 = at(x0, y0), v10 = at(x0 + 1, y0);
    double v01 = at(x0, y0 + 1), v11 = at(x0 + 1, y0 + 1);
    return (1.0 - fy) * ((1.0 - fx) * v00 + fx * v10) + fy * ((1.0 - fx) * v01 + fx * v11);
  }

  // Central-difference intensity gradient at a subpixel location.
  Vec2 gradient(const Vec2& p, double h = 0.5) const {
    double gx = (sample({p.x() + h, p.y()}) - sample({p.x() - h, p.y()})) / (2.0 * h);
    double gy = (sample({p.x(), p.y() + h}) - sample({p.x(), p.y() - h})) / (2.0 * h);
    return {gx, gy};
  }
};

// Binary mask with the same geometry as GrayImage.
struct BinaryImage {
  int width = 0;
  int height = 0;
  std::vector<uint8_t> data;

  BinaryImage() = default;
  BinaryImage(int w, int h, uint8_t fill = 0)
      : width(w), height(h), data(static_cast<size_t>(w) * h, fill) {}

  uint8_t& at(int x, int y) { return data[static_cast<size_t>(y) * width + x]; }
  uint8_t at(int x, int y) const { return data[static_cast<size_t>(y) * width + x]; }
  uint8_t at_or(int x, int y, uint8_t fallback) const {
    if (x < 0 || y < 0 || x >= width || y >= height) return fallback;
    return at(x, y);
  }
};

// Separable Gaussian blur with clamp-to-edge borders. sigma <= 0 is a no-op.
inline GrayImage gaussian_blur(const GrayImage& img, double sigma) {
  if (sigma <= 0.0) return img;
  int radius = std::max(1, static_cast<int>(std::ceil(3.0 * sigma)));
  std::vector<double> kernel(2 * radius + 1);
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    kernel[i + radius] = std::exp(-0.5 * (i * i) / (sigma * sigma));
    sum += kernel[i + radius];
  }
  for (double& k : kernel) k /= sum;

  GrayImage tmp(img.width, img.height);
  GrayImage out(img.width, img.height);
  parallel_for(img.height, [&](size_t yi) {
    int y = static_cast<int>(yi);
    for (int x = 0; x < img.width; ++x) {
      double acc = 0.0;
      for (int i = -radius; i <= radius; ++i) {
        int xx = std::clamp(x + i, 0, img.width - 1);
        acc += kernel[i + radius] * img.at(xx, y);
      }
      tmp.at(x, y) = static_cast<float>(acc);
    }
  });
  parallel_for(img.height, [&](size_t yi) {
    int y = static_cast<int>(yi);
    for (int x = 0; x < img.width; ++x) {
      double acc = 0.0;
      for (int i = -radius; i <= radius; ++i) {
        int yy = std::clamp(y + i, 0, img.height - 1);
        acc += kernel[i + radius] * img.at(x, yy);
      }
      out.at(x, y) = static_cast<float>(acc);
    }
  });
  return out;
}

// Summed-area table; sums are over pixel values, entry (x, y) covers the
// rectangle [0, x) x [0, y).
struct IntegralImage {
  int width = 0;
  int height = 0;
  std::vector<double> sums;  // (width + 1) * (height + 1)

  explicit IntegralImage(const GrayImage& img) : width(img.width), height(img.height) {
    sums.assign(static_cast<size_t>(width + 1) * (height + 1), 0.0);
    for (int y = 0; y < height; ++y) {
      double row = 0.0;
      for (int x = 0; x < width; ++x) {
        row += img.at(x, y);
        sums[static_cast<size_t>(y + 1) * (width + 1) + (x + 1)] =
            sums[static_cast<size_t>(y) * (width + 1) + (x + 1)] + row;
      }
    }
  }

  // Mean over the clipped window centered at (x, y) with half size r.
  double window_mean(int x, int y, int r) const {
    int x0 = std::max(0, x - r), x1 = std::min(width - 1, x + r);
    int y0 = std::max(0, y - r), y1 = std::min(height - 1, y + r);
    auto s = [&](int xx, int yy) { return sums[static_cast<size_t>(yy) * (width + 1) + xx]; };
    double total = s(x1 + 1, y1 + 1) - s(x0, y1 + 1) - s(x1 + 1, y0) + s(x0, y0);
    return total / ((x1 - x0 + 1) * (y1 - y0 + 1));
  }
};

}  // namespace widecal
