#include "plasmoscan/texture.hpp"

#include <cmath>

#include "plasmoscan/segment.hpp"

namespace plasmoscan {

Kernel sobel_x_kernel() {
    return Kernel(3, {-1, 0, 1, -2, 0, 2, -1, 0, 1});
}

Kernel sobel_y_kernel() {
    return Kernel(3, {-1, -2, -1, 0, 0, 0, 1, 2, 1});
}

// Integer Sobel taps; sums stay far below 2^53, so the result is
// bit-identical to the double-precision reference path.
GradientMap gradient_magnitude(const GrayImage& img) {
    const int w = img.width;
    const int h = img.height;
    GradientMap gm(w, h);
    if (img.empty()) return gm;
    const std::uint8_t* src = img.data.data();

#pragma omp parallel for schedule(static)
    for (int y = 0; y < h; ++y) {
        const int ym = y > 0 ? y - 1 : 0;
        const int yp = y < h - 1 ? y + 1 : h - 1;
        const std::uint8_t* rm = src + static_cast<std::size_t>(ym) * w;
        const std::uint8_t* rc = src + static_cast<std::size_t>(y) * w;
        const std::uint8_t* rp = src + static_cast<std::size_t>(yp) * w;
        double* out = &gm.magnitude[static_cast<std::size_t>(y) * w];
        for (int x = 0; x < w; ++x) {
            const int xm = x > 0 ? x - 1 : 0;
            const int xp = x < w - 1 ? x + 1 : w - 1;
            const int a = rm[xm], b = rm[x], c = rm[xp];
            const int d = rc[xm], f = rc[xp];
            const int g = rp[xm], i = rp[x], j = rp[xp];
            const int gx = (c + 2 * f + j) - (a + 2 * d + g);
            const int gy = (g + 2 * i + j) - (a + 2 * b + c);
            out[x] = std::sqrt(static_cast<double>(gx * gx + gy * gy));
        }
    }
    return gm;
}

BinaryImage gradient_binary(const GradientMap& gm, double t0) {
    BinaryImage zero(gm.width, gm.height);
    if (gm.empty()) return zero;

    double lo = gm.magnitude[0];
    double hi = gm.magnitude[0];
    for (double v : gm.magnitude) {
        if (v < lo) lo = v;
        if (v > hi) hi = v;
    }
    if (!(hi > lo)) return zero;  // flat map: blank tile

    GrayImage rescaled(gm.width, gm.height);
    const double scale = 255.0 / (hi - lo);
    const std::size_t count = gm.magnitude.size();
    for (std::size_t i = 0; i < count; ++i)
        rescaled.data[i] =
            static_cast<std::uint8_t>(std::lround((gm.magnitude[i] - lo) * scale));

    // lo and hi land on bins 0 and 255, so the histogram is never flat here
    const ThresholdResult t = iterative_threshold(rescaled, t0);
    return binarize(rescaled, t.threshold);
}

}  // namespace plasmoscan
