#pragma once

#include "plasmoscan/imgcore.hpp"

namespace plasmoscan {

struct ThresholdResult {
    double threshold = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Global threshold by the two-class mean iteration: starting from the
/// image mean, split pixels into G1 (> T) and G2 (<= T) and move T to
/// 0.5*(mu1 + mu2) until successive values differ by less than t0.
/// Capped at 256 iterations (converged=false on that exit). A constant
/// image throws DegenerateImageError.
ThresholdResult iterative_threshold(const GrayImage& img, double t0 = 0.5);

/// Foreground iff intensity is strictly greater than the threshold.
BinaryImage binarize(const GrayImage& img, double threshold);

}  // namespace plasmoscan
