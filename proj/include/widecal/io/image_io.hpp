#pragma once

#include <png.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "widecal/common.hpp"
#include "widecal/image.hpp"

namespace widecal {

// 8-bit binary PGM (P5).
inline void write_pgm(const std::string& path, const GrayImage& img) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << "P5\n" << img.width << " " << img.height << "\n255\n";
  std::vector<uint8_t> row(img.width);
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      double v = std::clamp(static_cast<double>(img.at(x, y)), 0.0, 1.0);
      row[x] = static_cast<uint8_t>(std::lround(v * 255.0));
    }
    out.write(reinterpret_cast<const char*>(row.data()), row.size());
  }
  if (!out) throw IoError("write failed: " + path);
}

inline GrayImage read_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open: " + path);
  std::string magic;
  in >> magic;
  if (magic != "P5") throw IoError("not a binary PGM (P5): " + path);
  auto next_int = [&in, &path]() {
    // skip whitespace and '#' comment lines
    for (;;) {
      int c = in.peek();
      if (c == '#') {
        std::string line;
        std::getline(in, line);
      } else if (std::isspace(c)) {
        in.get();
      } else {
        break;
      }
    }
    long v = -1;
    in >> v;
    if (!in || v < 0) throw IoError("malformed PGM header: " + path);
    return v;
  };
  long w = next_int(), h = next_int(), maxval = next_int();
  if (w <= 0 || h <= 0 || maxval <= 0 || maxval > 65535)
    throw IoError("unsupported PGM geometry: " + path);
  in.get();  // single whitespace after maxval
  GrayImage img(static_cast<int>(w), static_cast<int>(h));
  size_t n = static_cast<size_t>(w) * h;
  if (maxval < 256) {
    std::vector<uint8_t> buf(n);
    in.read(reinterpret_cast<char*>(buf.data()), buf.size());
    if (!in) throw IoError("truncated PGM: " + path);
    for (size_t i = 0; i < n; ++i) img.data[i] = buf[i] / static_cast<float>(maxval);
  } else {
    std::vector<uint8_t> buf(n * 2);  // big-endian 16-bit
    in.read(reinterpret_cast<char*>(buf.data()), buf.size());
    if (!in) throw IoError("truncated PGM: " + path);
    for (size_t i = 0; i < n; ++i) {
      unsigned v = (static_cast<unsigned>(buf[2 * i]) << 8) | buf[2 * i + 1];
      img.data[i] = v / static_cast<float>(maxval);
    }
  }
  return img;
}

// 8/16-bit grayscale or RGB(A) PNG; color converts to luminance.
inline GrayImage read_png(const std::string& path) {
  FILE* fp = std::fopen(path.c_str(), "rb");
  if (!fp) throw IoError("cannot open: " + path);
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    if (png) png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
    std::fclose(fp);
    throw IoError("libpng init failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    std::fclose(fp);
    throw IoError("libpng failed to decode: " + path);
  }
  png_init_io(png, fp);
  png_read_info(png, info);
  png_uint_32 w = png_get_image_width(png, info);
  png_uint_32 h = png_get_image_height(png, info);
  int color = png_get_color_type(png, info);
  int depth = png_get_bit_depth(png, info);
  if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color == PNG_COLOR_TYPE_GRAY && depth < 8) png_set_expand_gray_1_2_4_to_8(png);
  if (depth == 16) png_set_strip_16(png);
  if (color & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(png);
  if (color == PNG_COLOR_TYPE_RGB || color == PNG_COLOR_TYPE_RGB_ALPHA ||
      color == PNG_COLOR_TYPE_PALETTE)
    png_set_rgb_to_gray_fixed(png, 1, -1, -1);
  png_read_update_info(png, info);

  GrayImage img(static_cast<int>(w), static_cast<int>(h));
  std::vector<uint8_t> rowbuf(png_get_rowbytes(png, info));
  for (png_uint_32 y = 0; y < h; ++y) {
    png_read_row(png, rowbuf.data(), nullptr);
    for (png_uint_32 x = 0; x < w; ++x) img.at(x, y) = rowbuf[x] / 255.0f;
  }
  png_destroy_read_struct(&png, &info, nullptr);
  std::fclose(fp);
  return img;
}

inline GrayImage read_image(const std::string& path) {
  auto ext = std::filesystem::path(path).extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), ::tolower);
  if (ext == ".png") return read_png(path);
  if (ext == ".pgm") return read_pgm(path);
  throw IoError("unsupported image extension (want .pgm or .png): " + path);
}

}  // namespace widecal
