#include "plasmoscan/imgcore.hpp"

#include <cmath>
#include <cstdint>

namespace plasmoscan {

namespace {

inline int clamp_i(int v, int lo, int hi) {
    return v < lo ? lo : (v > hi ? hi : v);
}

}  // namespace

std::uint64_t BinaryImage::ones_count() const {
    std::uint64_t n = 0;
    for (std::uint8_t v : data) n += v;
    return n;
}

Kernel::Kernel(int size_, std::vector<double> weights_)
    : size(size_), weights(std::move(weights_)) {
    if (size < 1 || size % 2 == 0)
        throw std::invalid_argument("Kernel: size must be odd and positive");
    if (weights.size() != static_cast<std::size_t>(size) * size)
        throw std::invalid_argument("Kernel: weight count does not match size");
}

std::uint64_t Histogram::total() const {
    std::uint64_t n = 0;
    for (std::uint64_t b : bins) n += b;
    return n;
}

// Accumulation runs in kernel row-major order on both the interior fast
// path and the clamped border path, so results are bit-identical to the
// serial reference.
SignedImage convolve(const GrayImage& img, const Kernel& k) {
    if (img.empty()) throw std::invalid_argument("convolve: empty image");
    if (k.size < 1 || k.size % 2 == 0)
        throw std::invalid_argument("convolve: kernel size must be odd");

    const int w = img.width;
    const int h = img.height;
    const int n = k.size;
    const int r = n / 2;
    SignedImage out(w, h);
    const std::uint8_t* src = img.data.data();
    const double* kw = k.weights.data();

#pragma omp parallel for schedule(static)
    for (int y = 0; y < h; ++y) {
        double* orow = &out.data[static_cast<std::size_t>(y) * w];
        const bool y_interior = y >= r && y < h - r;
        for (int x = 0; x < w; ++x) {
            double s = 0.0;
            if (y_interior && x >= r && x < w - r) {
                const std::uint8_t* base =
                    src + static_cast<std::size_t>(y - r) * w + (x - r);
                const double* kp = kw;
                for (int ky = 0; ky < n; ++ky, base += w, kp += n) {
                    for (int kx = 0; kx < n; ++kx) s += kp[kx] * base[kx];
                }
            } else {
                for (int ky = 0; ky < n; ++ky) {
                    const int sy = clamp_i(y + ky - r, 0, h - 1);
                    for (int kx = 0; kx < n; ++kx) {
                        const int sx = clamp_i(x + kx - r, 0, w - 1);
                        s += kw[static_cast<std::size_t>(ky) * n + kx] *
                             src[static_cast<std::size_t>(sy) * w + sx];
                    }
                }
            }
            orow[x] = s;
        }
    }
    return out;
}

GrayImage clamp_to_gray(const SignedImage& img) {
    GrayImage out(img.width, img.height);
    const std::size_t count = img.data.size();
    for (std::size_t i = 0; i < count; ++i) {
        const long v = std::lround(img.data[i]);
        out.data[i] = static_cast<std::uint8_t>(v < 0 ? 0 : (v > 255 ? 255 : v));
    }
    return out;
}

GrayImage invert(const GrayImage& img) {
    GrayImage out(img.width, img.height);
    const std::size_t count = img.data.size();
    for (std::size_t i = 0; i < count; ++i)
        out.data[i] = static_cast<std::uint8_t>(255 - img.data[i]);
    return out;
}

GrayImage to_gray(const ColorImage& img) {
    if (!img.planes_match())
        throw std::invalid_argument("to_gray: plane dimensions differ");
    GrayImage out(img.width(), img.height());
    const std::size_t count = out.data.size();
    for (std::size_t i = 0; i < count; ++i) {
        const unsigned sum = unsigned(img.r.data[i]) + img.g.data[i] + img.b.data[i];
        out.data[i] = static_cast<std::uint8_t>(sum / 3);
    }
    return out;
}

Histogram histogram(const GrayImage& img) {
    Histogram h;
    const std::int64_t count = static_cast<std::int64_t>(img.data.size());
    const std::uint8_t* src = img.data.data();
#pragma omp parallel
    {
        std::array<std::uint64_t, 256> local{};
#pragma omp for schedule(static) nowait
        for (std::int64_t i = 0; i < count; ++i) ++local[src[i]];
#pragma omp critical(plasmoscan_histogram_merge)
        {
            for (int b = 0; b < 256; ++b) h.bins[b] += local[b];
        }
    }
    return h;
}

double mean_intensity(const GrayImage& img) {
    if (img.empty()) throw std::invalid_argument("mean_intensity: empty image");
    std::uint64_t sum = 0;
    for (std::uint8_t v : img.data) sum += v;
    return static_cast<double>(sum) / static_cast<double>(img.data.size());
}

}  // namespace plasmoscan
