#include "vptz/image.hpp"

#include <png.h>

#include <cstring>

#include "vptz/error.hpp"

namespace vptz {

Image::Image(int width, int height, Rgb fill) : width_(width), height_(height) {
    if (width < 1 || height < 1)
        throw Error("image dimensions must be >= 1");
    data_.resize(std::size_t(width) * height * 3);
    for (std::size_t i = 0; i < data_.size(); i += 3) {
        data_[i] = fill.r;
        data_[i + 1] = fill.g;
        data_[i + 2] = fill.b;
    }
}

Image load_png(const std::string& path) {
    png_image png;
    std::memset(&png, 0, sizeof(png));
    png.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_file(&png, path.c_str()))
        throw Error("cannot read PNG '" + path + "': " + png.message);
    png.format = PNG_FORMAT_RGB;
    Image img(int(png.width), int(png.height));
    if (!png_image_finish_read(&png, nullptr, img.data(), 0, nullptr)) {
        const std::string msg = png.message;
        png_image_free(&png);
        throw Error("cannot decode PNG '" + path + "': " + msg);
    }
    return img;
}

void save_png(const Image& img, const std::string& path) {
    if (img.empty())
        throw Error("cannot save an empty image to '" + path + "'");
    png_image png;
    std::memset(&png, 0, sizeof(png));
    png.version = PNG_IMAGE_VERSION;
    png.width = png_uint_32(img.width());
    png.height = png_uint_32(img.height());
    png.format = PNG_FORMAT_RGB;
    if (!png_image_write_to_file(&png, path.c_str(), 0, img.data(), 0, nullptr))
        throw Error("cannot write PNG '" + path + "': " + png.message);
}

void draw_rect_outline(Image& img, const Rect& r, Rgb color) {
    const int x0 = std::clamp(int(std::lround(r.x)), 0, img.width() - 1);
    const int y0 = std::clamp(int(std::lround(r.y)), 0, img.height() - 1);
    const int x1 = std::clamp(int(std::lround(r.x + r.width)), 0, img.width() - 1);
    const int y1 = std::clamp(int(std::lround(r.y + r.height)), 0, img.height() - 1);
    for (int x = x0; x <= x1; ++x) {
        img.set(x, y0, color);
        img.set(x, y1, color);
    }
    for (int y = y0; y <= y1; ++y) {
        img.set(x0, y, color);
        img.set(x1, y, color);
    }
}

void draw_cross(Image& img, double x, double y, int arm, Rgb color) {
    const int cx = int(std::lround(x));
    const int cy = int(std::lround(y));
    for (int d = -arm; d <= arm; ++d) {
        if (cx + d >= 0 && cx + d < img.width() && cy >= 0 && cy < img.height())
            img.set(cx + d, cy, color);
        if (cy + d >= 0 && cy + d < img.height() && cx >= 0 && cx < img.width())
            img.set(cx, cy + d, color);
    }
}

} // namespace vptz
