#include "eiga/image.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "eiga/errors.hpp"

namespace eiga {

Image::Image(int w, int h, const Vec3& fill) : width(w), height(h), rgb(3 * static_cast<size_t>(w) * h) {
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) set_pixel(x, y, fill);
}

Vec3 Image::bilinear(double x, double y) const {
    // shift so integer coordinates land on pixel centers
    const double fx = std::clamp(x - 0.5, 0.0, static_cast<double>(width - 1));
    const double fy = std::clamp(y - 0.5, 0.0, static_cast<double>(height - 1));
    const int x0 = std::min(static_cast<int>(fx), width - 1);
    const int y0 = std::min(static_cast<int>(fy), height - 1);
    const int x1 = std::min(x0 + 1, width - 1);
    const int y1 = std::min(y0 + 1, height - 1);
    const double tx = fx - x0;
    const double ty = fy - y0;
    return (1 - tx) * (1 - ty) * pixel(x0, y0) + tx * (1 - ty) * pixel(x1, y0) +
           (1 - tx) * ty * pixel(x0, y1) + tx * ty * pixel(x1, y1);
}

Image load_ppm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);

    auto next_token = [&in, &path]() {
        std::string tok;
        while (true) {
            int c = in.get();
            if (c == EOF) throw ParseError("unexpected end of PPM header in " + path);
            if (c == '#') {
                while (c != EOF && c != '\n') c = in.get();
                continue;
            }
            if (std::isspace(c)) {
                if (!tok.empty()) return tok;
                continue;
            }
            tok.push_back(static_cast<char>(c));
        }
    };

    if (next_token() != "P6") throw ParseError("not a binary PPM (P6): " + path);
    const int w = std::stoi(next_token());
    const int h = std::stoi(next_token());
    const int maxval = std::stoi(next_token());
    if (w <= 0 || h <= 0 || maxval != 255) throw ParseError("unsupported PPM geometry in " + path);

    Image img(w, h);
    std::vector<unsigned char> raw(3 * static_cast<size_t>(w) * h);
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (static_cast<size_t>(in.gcount()) != raw.size()) throw ParseError("truncated PPM payload in " + path);
    for (size_t i = 0; i < raw.size(); ++i) img.rgb[i] = raw[i] / 255.0f;
    return img;
}

void save_ppm(const Image& image, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << "P6\n" << image.width << " " << image.height << "\n255\n";
    std::vector<unsigned char> raw(image.rgb.size());
    for (size_t i = 0; i < raw.size(); ++i) {
        const float v = std::clamp(image.rgb[i], 0.0f, 1.0f);
        raw[i] = static_cast<unsigned char>(std::lround(v * 255.0f));
    }
    out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (!out) throw IoError("short write to " + path);
}

}  // namespace eiga
