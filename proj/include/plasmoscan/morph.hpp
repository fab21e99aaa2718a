#pragma once

#include <cstdint>

#include "plasmoscan/imgcore.hpp"

namespace plasmoscan {

/// Odd-sized binary structuring element with its origin at the center.
/// The origin cell is always set.
struct StructuringElement {
    enum class Shape { Square, Disk };

    int size = 3;
    Shape shape = Shape::Square;
    std::vector<std::uint8_t> mask;  // size*size, row-major

    static StructuringElement square(int size);
    /// Cells with dx*dx + dy*dy <= r*r for r = (size-1)/2.
    static StructuringElement disk(int size);

    bool cell(int kx, int ky) const {
        return mask[static_cast<std::size_t>(ky) * size + kx] != 0;
    }
    int radius() const { return size / 2; }
};

/// 180-degree rotation of the element.
StructuringElement reflect(const StructuringElement& se);

/// Minkowski-style dilation: output 1 iff any element cell, reflected
/// and anchored at the pixel, covers a foreground pixel. Out-of-image
/// reads are background.
BinaryImage dilate(const BinaryImage& img, const StructuringElement& se);

/// Output 1 iff every element cell covers a foreground pixel.
/// Out-of-image reads are background, so foreground touching the frame
/// erodes away.
BinaryImage erode(const BinaryImage& img, const StructuringElement& se);

/// Dilation followed by erosion with the same element.
BinaryImage close(const BinaryImage& img, const StructuringElement& se);

/// Zeroes every 8-connected component with fewer than min_area pixels.
BinaryImage remove_small_contours(const BinaryImage& img, std::int64_t min_area);

}  // namespace plasmoscan
