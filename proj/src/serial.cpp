#include "plasmoscan/serial.hpp"

#include <cmath>

namespace plasmoscan::serial {

namespace {

inline int clamp_i(int v, int lo, int hi) {
    return v < lo ? lo : (v > hi ? hi : v);
}

}  // namespace

SignedImage convolve(const GrayImage& img, const Kernel& k) {
    if (img.empty()) throw std::invalid_argument("convolve: empty image");
    if (k.size < 1 || k.size % 2 == 0)
        throw std::invalid_argument("convolve: kernel size must be odd");

    const int w = img.width;
    const int h = img.height;
    const int n = k.size;
    const int r = n / 2;
    SignedImage out(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double s = 0.0;
            for (int ky = 0; ky < n; ++ky) {
                const int sy = clamp_i(y + ky - r, 0, h - 1);
                for (int kx = 0; kx < n; ++kx) {
                    const int sx = clamp_i(x + kx - r, 0, w - 1);
                    s += k.at(kx, ky) * img.at(sx, sy);
                }
            }
            out.at(x, y) = s;
        }
    }
    return out;
}

Histogram histogram(const GrayImage& img) {
    Histogram h;
    for (std::uint8_t v : img.data) ++h.bins[v];
    return h;
}

BinaryImage dilate(const BinaryImage& img, const StructuringElement& se) {
    const int w = img.width;
    const int h = img.height;
    const int r = se.radius();
    BinaryImage out(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            std::uint8_t hit = 0;
            for (int ky = 0; ky < se.size && !hit; ++ky) {
                for (int kx = 0; kx < se.size && !hit; ++kx) {
                    if (!se.cell(kx, ky)) continue;
                    // reflected element: subtract the offset
                    const int sx = x - (kx - r);
                    const int sy = y - (ky - r);
                    if (sx < 0 || sx >= w || sy < 0 || sy >= h) continue;
                    if (img.at(sx, sy)) hit = 1;
                }
            }
            out.at(x, y) = hit;
        }
    }
    return out;
}

BinaryImage erode(const BinaryImage& img, const StructuringElement& se) {
    const int w = img.width;
    const int h = img.height;
    const int r = se.radius();
    BinaryImage out(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            std::uint8_t all = 1;
            for (int ky = 0; ky < se.size && all; ++ky) {
                for (int kx = 0; kx < se.size && all; ++kx) {
                    if (!se.cell(kx, ky)) continue;
                    const int sx = x + (kx - r);
                    const int sy = y + (ky - r);
                    if (sx < 0 || sx >= w || sy < 0 || sy >= h || !img.at(sx, sy))
                        all = 0;
                }
            }
            out.at(x, y) = all;
        }
    }
    return out;
}

GradientMap gradient_magnitude(const GrayImage& img) {
    const SignedImage gx = serial::convolve(img, sobel_x_kernel());
    const SignedImage gy = serial::convolve(img, sobel_y_kernel());
    GradientMap gm(img.width, img.height);
    const std::size_t count = gm.magnitude.size();
    for (std::size_t i = 0; i < count; ++i)
        gm.magnitude[i] = std::sqrt(gx.data[i] * gx.data[i] + gy.data[i] * gy.data[i]);
    return gm;
}

}  // namespace plasmoscan::serial
