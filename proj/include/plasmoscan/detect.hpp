#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "plasmoscan/enhance.hpp"
#include "plasmoscan/imgcore.hpp"
#include "plasmoscan/morph.hpp"
#include "plasmoscan/segment.hpp"
#include "plasmoscan/texture.hpp"

namespace plasmoscan {

/// Per-pixel contour labels: 0 is background, components are numbered
/// 1..count in raster order of first encounter.
struct LabelMap {
    int width = 0;
    int height = 0;
    std::vector<std::int32_t> labels;
    std::int32_t count = 0;

    LabelMap() = default;
    LabelMap(int w, int h)
        : width(w),
          height(h),
          labels(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), 0) {}

    std::size_t idx(int x, int y) const {
        return static_cast<std::size_t>(y) * width + x;
    }
    std::int32_t at(int x, int y) const { return labels[idx(x, y)]; }
    std::int32_t& at(int x, int y) { return labels[idx(x, y)]; }
};

struct ContourVerdict {
    std::int32_t label = 0;
    std::int64_t area = 0;
    double centroid_x = 0.0;
    double centroid_y = 0.0;
    double local_value = 0.0;
    bool is_plasmodium = false;
};

/// Every tunable the pipeline exposes. ratio_factor realizes the
/// "much greater than" decision rule as local_value >= ratio_factor * val.
struct PipelineConfig {
    NormalizationParams normalization;
    double t0 = 0.5;
    StructuringElement::Shape se_shape = StructuringElement::Shape::Square;
    int se_size = 3;
    std::int64_t min_area = 50;
    double ratio_factor = 5.0;
    int connectivity = 8;

    StructuringElement se() const;
};

struct StageDigest {
    std::string stage;
    std::uint64_t hash = 0;
};

struct DetectionReport {
    std::string image;
    int width = 0;
    int height = 0;
    double global_value = 0.0;
    double threshold = 0.0;
    std::vector<ContourVerdict> contours;
    bool plasmodium_found = false;
    PipelineConfig config;
    /// Hashes of every intermediate stage, for golden tests. Not part of
    /// the serialized report.
    std::vector<StageDigest> stage_digests;
};

/// Full pipeline output including the intermediate rasters, for tests
/// and overlay rendering.
struct PipelineResult {
    DetectionReport report;
    ColorImage sharpened;
    GrayImage gray;
    GrayImage inverted;
    GrayImage normalized;
    BinaryImage binary;
    BinaryImage closed;
    BinaryImage cleaned;
    LabelMap label_map;
    GradientMap gradient;
    BinaryImage gradient_mask;
    bool blank_tile = false;
};

/// 8-connected component labeling in raster order. connectivity must be 8.
LabelMap label_components(const BinaryImage& mask, int connectivity = 8);

/// Foreground fraction of the gradient mask over all pixels.
double global_density(const BinaryImage& gradmask);

/// Fraction of the contour's pixels whose gradient-mask value is 1.
double contour_density(const LabelMap& lm, std::int32_t label,
                       const BinaryImage& gradmask);

/// The per-contour decision rule shared by classify.
bool plasmodium_decision(double local_value, double global_value,
                         double ratio_factor);

/// Scores every contour against the global gradient density. Contours
/// below min_area are reported but never flagged.
DetectionReport classify(const LabelMap& lm, const BinaryImage& gradmask,
                         const PipelineConfig& cfg);

/// End-to-end run: sharpen, gray, invert, normalize, threshold,
/// binarize, close, drop small contours, label; in parallel the gradient
/// texture branch on the inverted gray; then classify. A tile whose
/// normalized image is constant produces an empty "blank tile" report
/// instead of an error.
PipelineResult run_pipeline_traced(const ColorImage& img,
                                   const PipelineConfig& cfg);
DetectionReport run_pipeline(const ColorImage& img, const PipelineConfig& cfg);

}  // namespace plasmoscan
