#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "eiga/types.hpp"

namespace eiga {

// RGB image with unit-range channels, row-major, origin at the top-left.
struct Image {
    int width = 0;
    int height = 0;
    std::vector<float> rgb;  // 3 * width * height

    Image() = default;
    Image(int w, int h, const Vec3& fill = Vec3::Zero());

    Vec3 pixel(int x, int y) const {
        const size_t i = 3 * (static_cast<size_t>(y) * width + x);
        return Vec3(rgb[i], rgb[i + 1], rgb[i + 2]);
    }
    void set_pixel(int x, int y, const Vec3& c) {
        const size_t i = 3 * (static_cast<size_t>(y) * width + x);
        rgb[i] = static_cast<float>(c.x());
        rgb[i + 1] = static_cast<float>(c.y());
        rgb[i + 2] = static_cast<float>(c.z());
    }

    // Bilinear sample at pixel coordinates ((0.5,0.5) is the center of the
    // top-left pixel), clamp-to-edge at the borders.
    Vec3 bilinear(double x, double y) const;
};

// Binary PPM (P6), 8 bits per channel.
Image load_ppm(const std::string& path);
void save_ppm(const Image& image, const std::string& path);

}  // namespace eiga
