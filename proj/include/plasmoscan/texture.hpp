#pragma once

#include "plasmoscan/imgcore.hpp"

namespace plasmoscan {

/// Per-pixel gradient magnitudes, all non-negative.
struct GradientMap {
    int width = 0;
    int height = 0;
    std::vector<double> magnitude;

    GradientMap() = default;
    GradientMap(int w, int h)
        : width(w),
          height(h),
          magnitude(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), 0.0) {}

    std::size_t idx(int x, int y) const {
        return static_cast<std::size_t>(y) * width + x;
    }
    double at(int x, int y) const { return magnitude[idx(x, y)]; }
    bool empty() const { return magnitude.empty(); }
    bool operator==(const GradientMap&) const = default;
};

Kernel sobel_x_kernel();  // [-1 0 1; -2 0 2; -1 0 1]
Kernel sobel_y_kernel();  // [-1 -2 -1; 0 0 0; 1 2 1]

/// Sobel magnitude sqrt(gx^2 + gy^2) with replicate borders.
GradientMap gradient_magnitude(const GrayImage& img);

/// Rescales magnitudes linearly onto [0,255], picks a threshold with the
/// two-class mean iteration, and binarizes with the strict > rule. A
/// flat map (blank tile) yields an all-zero mask.
BinaryImage gradient_binary(const GradientMap& gm, double t0 = 0.5);

}  // namespace plasmoscan
