#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vptz/geometry.hpp"

namespace vptz {

struct Rgb {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;

    bool operator==(const Rgb&) const = default;
};

/// 8-bit RGB raster, rows stored top-down.
class Image {
public:
    Image() = default;
    Image(int width, int height, Rgb fill = {0, 0, 0});

    int width() const { return width_; }
    int height() const { return height_; }
    bool empty() const { return data_.empty(); }

    Rgb at(int x, int y) const {
        const std::size_t i = idx(x, y);
        return {data_[i], data_[i + 1], data_[i + 2]};
    }
    void set(int x, int y, Rgb c) {
        const std::size_t i = idx(x, y);
        data_[i] = c.r;
        data_[i + 1] = c.g;
        data_[i + 2] = c.b;
    }

    const std::uint8_t* data() const { return data_.data(); }
    std::uint8_t* data() { return data_.data(); }
    std::size_t byte_count() const { return data_.size(); }

    bool operator==(const Image&) const = default;

private:
    std::size_t idx(int x, int y) const {
        return (std::size_t(y) * width_ + x) * 3;
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> data_;
};

Image load_png(const std::string& path);
void save_png(const Image& img, const std::string& path);

/// Continuous raster row of a bottom-up image coordinate (and vice versa:
/// the mapping is its own inverse). Pixel centers land on half-integers.
inline double raster_row_from_v(double v, int height) { return height - v; }

/// Rect given in bottom-up coordinates, expressed in raster coordinates
/// (top-down y), or the other way around.
inline Rect flip_rect_vertical(const Rect& r, int height) {
    return {r.x, height - (r.y + r.height), r.width, r.height};
}

/// Overlay helpers for human inspection; rect/points in raster coordinates.
void draw_rect_outline(Image& img, const Rect& r, Rgb color);
void draw_cross(Image& img, double x, double y, int arm, Rgb color);

} // namespace vptz
