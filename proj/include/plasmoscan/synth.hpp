#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "plasmoscan/detect.hpp"
#include "plasmoscan/imgcore.hpp"

namespace plasmoscan {

class PlacementError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parameters of a synthetic stained-smear image. Objects are disks
/// placed fully inside the frame; red cells may touch or mildly overlap
/// each other, parasites keep clear of every other object so each one
/// stays its own contour. Everything is a pure function of the seed.
struct SmearSpec {
    int width = 256;
    int height = 256;
    int rbc_count = 12;
    int parasite_count = 0;
    int rbc_radius_min = 16;
    int rbc_radius_max = 24;
    int parasite_radius_min = 6;
    int parasite_radius_max = 10;
    int background_level = 215;
    int illumination_amplitude = 20;
    int texture_amplitude = 60;
    std::uint64_t seed = 0;
};

struct SmearObject {
    enum class Kind { Rbc, Parasite };

    Kind kind = Kind::Rbc;
    int cx = 0;
    int cy = 0;
    int radius = 0;

    /// Disk membership test; the object's pixel mask is exactly this set.
    bool contains(double x, double y) const {
        const double dx = x - cx;
        const double dy = y - cy;
        return dx * dx + dy * dy <= static_cast<double>(radius) * radius;
    }
};

struct GroundTruth {
    int width = 0;
    int height = 0;
    std::uint64_t seed = 0;
    std::vector<SmearObject> objects;

    int parasite_count() const;
    bool any_parasite_contains(double x, double y) const;
};

std::pair<ColorImage, GroundTruth> generate(const SmearSpec& spec);

std::string serialize_ground_truth(const GroundTruth& gt);
GroundTruth parse_ground_truth(const std::string& json_text);

/// Image-level confusion entry plus object-level match counts;
/// accumulates across a corpus with add().
struct Metrics {
    int true_positives = 0;
    int false_positives = 0;
    int true_negatives = 0;
    int false_negatives = 0;
    int matched_detections = 0;
    int unmatched_detections = 0;

    void add(const Metrics& other);
    int images() const;
    double accuracy() const;
    double sensitivity() const;
    double specificity() const;
};

/// A flagged contour matches a parasite when its centroid falls inside
/// that parasite's mask. The image-level entry compares plasmodium_found
/// against the presence of any parasite in the ground truth.
Metrics score(const DetectionReport& report, const GroundTruth& gt);

}  // namespace plasmoscan
