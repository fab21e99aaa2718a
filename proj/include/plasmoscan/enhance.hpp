#pragma once

#include "plasmoscan/imgcore.hpp"

namespace plasmoscan {

/// Tunables for the global illumination correction of the inverted gray
/// image. Defaults: subtract 45% of the mean, compare the mean against
/// the brightest 1/80 of pixels, and only act when they differ by more
/// than 40 gray levels.
struct NormalizationParams {
    double subtract_fraction = 0.45;
    double top_fraction = 1.0 / 80.0;
    int activation_threshold = 40;
};

/// 4-neighbor discrete Laplacian [0 1 0; 1 -4 1; 0 1 0].
Kernel laplacian_kernel();

/// Laplacian response with replicate borders, unclamped.
SignedImage laplacian(const GrayImage& img);

/// Edge sharpening: f minus its Laplacian, clamped back to 8 bits.
GrayImage sharpen(const GrayImage& img);

/// Sharpen applied independently to each plane.
ColorImage sharpen_color(const ColorImage& img);

/// Mean intensity of the n = max(1, floor(top_fraction * pixels))
/// brightest pixels, selected from the histogram downward. Partial
/// demand on the boundary bin counts at that bin's value.
double top_group_mean(const GrayImage& img, double top_fraction);

/// Subtracts round(subtract_fraction * mean) from every pixel (clamped
/// at 0) when the brightest-group mean exceeds the image mean by more
/// than activation_threshold; otherwise returns the input unchanged.
GrayImage normalize_illumination(const GrayImage& inverted,
                                 const NormalizationParams& p);

}  // namespace plasmoscan
