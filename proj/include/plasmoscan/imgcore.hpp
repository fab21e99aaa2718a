#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace plasmoscan {

/// Raised when an image carries too little structure for an algorithm to
/// proceed, e.g. a constant image fed to the threshold iteration.
class DegenerateImageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Single-channel 8-bit raster, row-major.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> data;

    GrayImage() = default;
    GrayImage(int w, int h, std::uint8_t fill = 0)
        : width(w),
          height(h),
          data(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), fill) {}

    std::size_t idx(int x, int y) const {
        return static_cast<std::size_t>(y) * width + x;
    }
    std::uint8_t at(int x, int y) const { return data[idx(x, y)]; }
    std::uint8_t& at(int x, int y) { return data[idx(x, y)]; }
    std::size_t pixel_count() const { return data.size(); }
    bool empty() const { return data.empty(); }
    bool operator==(const GrayImage&) const = default;
};

/// Three 8-bit planes of identical dimensions.
struct ColorImage {
    GrayImage r, g, b;

    ColorImage() = default;
    ColorImage(int w, int h) : r(w, h), g(w, h), b(w, h) {}
    ColorImage(int w, int h, std::uint8_t fr, std::uint8_t fg, std::uint8_t fb)
        : r(w, h, fr), g(w, h, fg), b(w, h, fb) {}

    int width() const { return r.width; }
    int height() const { return r.height; }
    bool empty() const { return r.empty(); }
    bool planes_match() const {
        return r.width == g.width && g.width == b.width && r.height == g.height &&
               g.height == b.height;
    }
    bool operator==(const ColorImage&) const = default;
};

/// Real-valued raster holding unclamped filter responses.
struct SignedImage {
    int width = 0;
    int height = 0;
    std::vector<double> data;

    SignedImage() = default;
    SignedImage(int w, int h, double fill = 0.0)
        : width(w),
          height(h),
          data(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), fill) {}

    std::size_t idx(int x, int y) const {
        return static_cast<std::size_t>(y) * width + x;
    }
    double at(int x, int y) const { return data[idx(x, y)]; }
    double& at(int x, int y) { return data[idx(x, y)]; }
    bool empty() const { return data.empty(); }
    bool operator==(const SignedImage&) const = default;
};

/// {0,1} mask, one byte per pixel, row-major.
struct BinaryImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> data;

    BinaryImage() = default;
    BinaryImage(int w, int h, std::uint8_t fill = 0)
        : width(w),
          height(h),
          data(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), fill) {}

    std::size_t idx(int x, int y) const {
        return static_cast<std::size_t>(y) * width + x;
    }
    std::uint8_t at(int x, int y) const { return data[idx(x, y)]; }
    std::uint8_t& at(int x, int y) { return data[idx(x, y)]; }
    std::size_t pixel_count() const { return data.size(); }
    std::uint64_t ones_count() const;
    bool empty() const { return data.empty(); }
    bool operator==(const BinaryImage&) const = default;
};

/// Odd-sized square filter kernel anchored at its center. Weights are
/// applied as written (cross-correlation form, no reflection).
struct Kernel {
    int size = 0;
    std::vector<double> weights;  // size*size, row-major

    Kernel() = default;
    Kernel(int size_, std::vector<double> weights_);

    double at(int kx, int ky) const {
        return weights[static_cast<std::size_t>(ky) * size + kx];
    }
};

/// 256-bin intensity histogram.
struct Histogram {
    std::array<std::uint64_t, 256> bins{};

    std::uint64_t total() const;
    bool operator==(const Histogram&) const = default;
};

/// Sliding sum-of-products with replicate padding at the borders. The
/// result keeps full signed precision; clamp explicitly when a GrayImage
/// is needed.
SignedImage convolve(const GrayImage& img, const Kernel& k);

/// Rounds each sample to the nearest integer and clips into [0,255].
GrayImage clamp_to_gray(const SignedImage& img);

/// Intensity complement 255 - v.
GrayImage invert(const GrayImage& img);

/// Plane average floor((R+G+B)/3).
GrayImage to_gray(const ColorImage& img);

Histogram histogram(const GrayImage& img);

/// Arithmetic mean over all pixels, computed from an exact integer sum.
double mean_intensity(const GrayImage& img);

}  // namespace plasmoscan
