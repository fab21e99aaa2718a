#pragma once

#include "plasmoscan/imgcore.hpp"
#include "plasmoscan/morph.hpp"
#include "plasmoscan/texture.hpp"

// Straight-line single-threaded kernels. These are the reference the
// OpenMP implementations are tested against (bit-identical results
// required) and the baseline the benchmark compares with.
namespace plasmoscan::serial {

SignedImage convolve(const GrayImage& img, const Kernel& k);
Histogram histogram(const GrayImage& img);
BinaryImage dilate(const BinaryImage& img, const StructuringElement& se);
BinaryImage erode(const BinaryImage& img, const StructuringElement& se);
GradientMap gradient_magnitude(const GrayImage& img);

}  // namespace plasmoscan::serial
