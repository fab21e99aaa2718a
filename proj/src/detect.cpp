#include "plasmoscan/detect.hpp"

#include <numeric>

#include "plasmoscan/digest.hpp"

namespace plasmoscan {

StructuringElement PipelineConfig::se() const {
    return se_shape == StructuringElement::Shape::Square
               ? StructuringElement::square(se_size)
               : StructuringElement::disk(se_size);
}

namespace {

std::int32_t find_root(std::vector<std::int32_t>& parent, std::int32_t i) {
    std::int32_t root = i;
    while (parent[root] != root) root = parent[root];
    while (parent[i] != root) {
        const std::int32_t next = parent[i];
        parent[i] = root;
        i = next;
    }
    return root;
}

void union_labels(std::vector<std::int32_t>& parent, std::int32_t a, std::int32_t b) {
    a = find_root(parent, a);
    b = find_root(parent, b);
    if (a == b) return;
    if (a < b)
        parent[b] = a;
    else
        parent[a] = b;
}

}  // namespace

// Two-pass union-find labeling. Provisional labels are assigned in
// raster order, merged through the four already-visited neighbors, then
// renumbered by first raster appearance so output labels are stable.
LabelMap label_components(const BinaryImage& mask, int connectivity) {
    if (connectivity != 8)
        throw std::invalid_argument("label_components: only 8-connectivity is supported");

    const int w = mask.width;
    const int h = mask.height;
    LabelMap lm(w, h);
    if (mask.empty()) return lm;

    std::vector<std::int32_t> provisional(mask.data.size(), 0);
    std::vector<std::int32_t> parent(1, 0);

    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (!mask.at(x, y)) continue;
            const std::size_t i = mask.idx(x, y);

            std::int32_t neighbors[4];
            int n = 0;
            if (x > 0 && provisional[i - 1]) neighbors[n++] = provisional[i - 1];
            if (y > 0) {
                const std::size_t up = i - static_cast<std::size_t>(w);
                if (x > 0 && provisional[up - 1]) neighbors[n++] = provisional[up - 1];
                if (provisional[up]) neighbors[n++] = provisional[up];
                if (x < w - 1 && provisional[up + 1]) neighbors[n++] = provisional[up + 1];
            }

            if (n == 0) {
                const auto fresh = static_cast<std::int32_t>(parent.size());
                parent.push_back(fresh);
                provisional[i] = fresh;
            } else {
                std::int32_t lowest = neighbors[0];
                for (int k = 1; k < n; ++k)
                    if (neighbors[k] < lowest) lowest = neighbors[k];
                provisional[i] = lowest;
                for (int k = 0; k < n; ++k) union_labels(parent, lowest, neighbors[k]);
            }
        }
    }

    std::vector<std::int32_t> final_label(parent.size(), 0);
    std::int32_t count = 0;
    for (std::size_t i = 0; i < provisional.size(); ++i) {
        if (!provisional[i]) continue;
        const std::int32_t root = find_root(parent, provisional[i]);
        if (final_label[root] == 0) final_label[root] = ++count;
        lm.labels[i] = final_label[root];
    }
    lm.count = count;
    return lm;
}

double global_density(const BinaryImage& gradmask) {
    if (gradmask.empty())
        throw std::invalid_argument("global_density: empty mask");
    return static_cast<double>(gradmask.ones_count()) /
           static_cast<double>(gradmask.pixel_count());
}

double contour_density(const LabelMap& lm, std::int32_t label,
                       const BinaryImage& gradmask) {
    if (label < 1 || label > lm.count)
        throw std::invalid_argument("contour_density: unknown label");
    if (lm.width != gradmask.width || lm.height != gradmask.height)
        throw std::invalid_argument("contour_density: dimension mismatch");

    std::int64_t area = 0;
    std::int64_t ones = 0;
    for (std::size_t i = 0; i < lm.labels.size(); ++i) {
        if (lm.labels[i] != label) continue;
        ++area;
        ones += gradmask.data[i];
    }
    return static_cast<double>(ones) / static_cast<double>(area);
}

bool plasmodium_decision(double local_value, double global_value,
                         double ratio_factor) {
    return local_value > 0.0 && local_value >= ratio_factor * global_value;
}

DetectionReport classify(const LabelMap& lm, const BinaryImage& gradmask,
                         const PipelineConfig& cfg) {
    if (lm.width != gradmask.width || lm.height != gradmask.height)
        throw std::invalid_argument("classify: dimension mismatch");

    DetectionReport report;
    report.width = lm.width;
    report.height = lm.height;
    report.config = cfg;
    report.global_value = lm.labels.empty() ? 0.0 : global_density(gradmask);

    // single pass accumulating area, centroid and gradient hits per label
    std::vector<std::int64_t> area(static_cast<std::size_t>(lm.count) + 1, 0);
    std::vector<std::int64_t> ones(static_cast<std::size_t>(lm.count) + 1, 0);
    std::vector<std::int64_t> sum_x(static_cast<std::size_t>(lm.count) + 1, 0);
    std::vector<std::int64_t> sum_y(static_cast<std::size_t>(lm.count) + 1, 0);
    for (int y = 0; y < lm.height; ++y) {
        for (int x = 0; x < lm.width; ++x) {
            const std::int32_t label = lm.at(x, y);
            if (!label) continue;
            ++area[label];
            ones[label] += gradmask.at(x, y);
            sum_x[label] += x;
            sum_y[label] += y;
        }
    }

    report.contours.reserve(lm.count);
    for (std::int32_t label = 1; label <= lm.count; ++label) {
        ContourVerdict v;
        v.label = label;
        v.area = area[label];
        v.centroid_x = static_cast<double>(sum_x[label]) / static_cast<double>(area[label]);
        v.centroid_y = static_cast<double>(sum_y[label]) / static_cast<double>(area[label]);
        v.local_value = static_cast<double>(ones[label]) / static_cast<double>(area[label]);
        v.is_plasmodium =
            v.area >= cfg.min_area &&
            plasmodium_decision(v.local_value, report.global_value, cfg.ratio_factor);
        report.plasmodium_found = report.plasmodium_found || v.is_plasmodium;
        report.contours.push_back(v);
    }
    return report;
}

namespace {

std::uint64_t digest_color(const ColorImage& img) {
    std::uint64_t h = fnv1a64_values(img.r.data);
    h = fnv1a64_values(img.g.data, h);
    return fnv1a64_values(img.b.data, h);
}

}  // namespace

PipelineResult run_pipeline_traced(const ColorImage& img,
                                   const PipelineConfig& cfg) {
    PipelineResult res;
    res.sharpened = sharpen_color(img);
    res.gray = to_gray(res.sharpened);
    res.inverted = invert(res.gray);
    res.normalized = normalize_illumination(res.inverted, cfg.normalization);

    // texture branch taps the inverted gray before normalization
    res.gradient = gradient_magnitude(res.inverted);
    res.gradient_mask = gradient_binary(res.gradient, cfg.t0);

    double threshold = 0.0;
    try {
        const ThresholdResult t = iterative_threshold(res.normalized, cfg.t0);
        threshold = t.threshold;
        res.binary = binarize(res.normalized, threshold);
        res.closed = close(res.binary, cfg.se());
        res.cleaned = remove_small_contours(res.closed, cfg.min_area);
    } catch (const DegenerateImageError&) {
        // blank tile: no contours, report stays empty
        res.blank_tile = true;
        res.binary = BinaryImage(img.width(), img.height());
        res.closed = res.binary;
        res.cleaned = res.binary;
    }
    res.label_map = label_components(res.cleaned, cfg.connectivity);

    res.report = classify(res.label_map, res.gradient_mask, cfg);
    res.report.threshold = threshold;
    res.report.stage_digests = {
        {"sharpened", digest_color(res.sharpened)},
        {"gray", fnv1a64_values(res.gray.data)},
        {"inverted", fnv1a64_values(res.inverted.data)},
        {"normalized", fnv1a64_values(res.normalized.data)},
        {"binary", fnv1a64_values(res.binary.data)},
        {"closed", fnv1a64_values(res.closed.data)},
        {"cleaned", fnv1a64_values(res.cleaned.data)},
        {"labels", fnv1a64_values(res.label_map.labels)},
        {"gradient_mask", fnv1a64_values(res.gradient_mask.data)},
    };
    return res;
}

DetectionReport run_pipeline(const ColorImage& img, const PipelineConfig& cfg) {
    return run_pipeline_traced(img, cfg).report;
}

}  // namespace plasmoscan
