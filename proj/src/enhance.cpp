#include "plasmoscan/enhance.hpp"

#include <cmath>

namespace plasmoscan {

Kernel laplacian_kernel() {
    return Kernel(3, {0, 1, 0, 1, -4, 1, 0, 1, 0});
}

namespace {

// identity minus Laplacian; over integer pixels this equals f - lap(f)
// exactly, in one pass.
Kernel sharpen_kernel() {
    return Kernel(3, {0, -1, 0, -1, 5, -1, 0, -1, 0});
}

void validate(const NormalizationParams& p) {
    if (!(p.subtract_fraction >= 0.0 && p.subtract_fraction <= 1.0))
        throw std::invalid_argument("normalize_illumination: subtract_fraction out of [0,1]");
    if (!(p.top_fraction > 0.0 && p.top_fraction <= 1.0))
        throw std::invalid_argument("normalize_illumination: top_fraction out of (0,1]");
    if (p.activation_threshold < 0 || p.activation_threshold > 255)
        throw std::invalid_argument("normalize_illumination: activation_threshold out of [0,255]");
}

}  // namespace

SignedImage laplacian(const GrayImage& img) {
    return convolve(img, laplacian_kernel());
}

GrayImage sharpen(const GrayImage& img) {
    if (img.empty()) return {};
    return clamp_to_gray(convolve(img, sharpen_kernel()));
}

ColorImage sharpen_color(const ColorImage& img) {
    ColorImage out;
    out.r = sharpen(img.r);
    out.g = sharpen(img.g);
    out.b = sharpen(img.b);
    return out;
}

double top_group_mean(const GrayImage& img, double top_fraction) {
    if (img.empty()) throw std::invalid_argument("top_group_mean: empty image");
    if (!(top_fraction > 0.0 && top_fraction <= 1.0))
        throw std::invalid_argument("top_group_mean: top_fraction out of (0,1]");

    const auto pixel_count = static_cast<double>(img.pixel_count());
    const auto n = static_cast<std::uint64_t>(
        std::max<double>(1.0, std::floor(top_fraction * pixel_count)));

    const Histogram h = histogram(img);
    std::uint64_t remaining = n;
    std::uint64_t weighted = 0;
    for (int v = 255; v >= 0 && remaining > 0; --v) {
        const std::uint64_t take = std::min<std::uint64_t>(h.bins[v], remaining);
        weighted += take * static_cast<std::uint64_t>(v);
        remaining -= take;
    }
    return static_cast<double>(weighted) / static_cast<double>(n);
}

GrayImage normalize_illumination(const GrayImage& inverted,
                                 const NormalizationParams& p) {
    validate(p);
    if (inverted.empty()) return inverted;

    const double mean = mean_intensity(inverted);
    const double top = top_group_mean(inverted, p.top_fraction);
    if (!(top - mean > static_cast<double>(p.activation_threshold))) return inverted;

    const long delta = std::lround(p.subtract_fraction * mean);
    GrayImage out(inverted.width, inverted.height);
    const std::size_t count = inverted.data.size();
    for (std::size_t i = 0; i < count; ++i) {
        const long v = static_cast<long>(inverted.data[i]) - delta;
        out.data[i] = static_cast<std::uint8_t>(v < 0 ? 0 : v);
    }
    return out;
}

}  // namespace plasmoscan
