#include "plasmoscan/synth.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "plasmoscan/rng.hpp"

namespace plasmoscan {

int GroundTruth::parasite_count() const {
    int n = 0;
    for (const auto& o : objects)
        if (o.kind == SmearObject::Kind::Parasite) ++n;
    return n;
}

bool GroundTruth::any_parasite_contains(double x, double y) const {
    for (const auto& o : objects)
        if (o.kind == SmearObject::Kind::Parasite && o.contains(x, y)) return true;
    return false;
}

namespace {

// Stain palette, expressed as offsets from the background so a darker
// background keeps the ordering background > cell > parasite.
constexpr int kBgOffsetR = 15;
constexpr int kBgOffsetG = -12;
constexpr int kBgOffsetB = -6;
constexpr int kRbcDropR = 25;
constexpr int kRbcDropG = 45;
constexpr int kRbcDropB = 35;
constexpr int kParasiteDropR = 125;
constexpr int kParasiteDropG = 140;
constexpr int kParasiteDropB = 85;

// Edge softness in pixels. The blend ring sits outside the nominal
// radius, so the ground-truth disk is uniformly stained.
constexpr double kRbcFeather = 3.0;
constexpr double kParasiteFeather = 2.0;

constexpr double kBaseNoise = 2.0;
constexpr int kMaxPlacementAttempts = 1000;

struct Rgb {
    double r, g, b;
};

std::uint8_t quantize(double v) {
    const long q = std::lround(v);
    return static_cast<std::uint8_t>(std::clamp(q, 0L, 255L));
}

void validate(const SmearSpec& spec) {
    if (spec.width < 1 || spec.height < 1)
        throw std::invalid_argument("generate: non-positive dimensions");
    if (spec.rbc_count < 0 || spec.parasite_count < 0)
        throw std::invalid_argument("generate: negative object count");
    if (spec.rbc_radius_min < 1 || spec.rbc_radius_min > spec.rbc_radius_max)
        throw std::invalid_argument("generate: bad red cell radius range");
    if (spec.parasite_radius_min < 1 ||
        spec.parasite_radius_min > spec.parasite_radius_max)
        throw std::invalid_argument("generate: bad parasite radius range");
    if (spec.background_level < 0 || spec.background_level > 255)
        throw std::invalid_argument("generate: background level outside [0,255]");
    if (spec.illumination_amplitude < 0 || spec.texture_amplitude < 0)
        throw std::invalid_argument("generate: negative amplitude");
}

double feather_of(const SmearObject& o) {
    return o.kind == SmearObject::Kind::Rbc ? kRbcFeather : kParasiteFeather;
}

double center_distance(const SmearObject& a, const SmearObject& b) {
    const double dx = a.cx - b.cx;
    const double dy = a.cy - b.cy;
    return std::sqrt(dx * dx + dy * dy);
}

bool placement_ok(const SmearObject& cand, const std::vector<SmearObject>& placed) {
    for (const auto& o : placed) {
        const double d = center_distance(cand, o);
        if (cand.kind == SmearObject::Kind::Rbc) {
            // cells may overlap a little but never stack outright
            if (o.kind == SmearObject::Kind::Rbc &&
                d < 0.9 * (cand.radius + o.radius))
                return false;
        } else {
            // parasites stay clear of everything, blend rings included
            if (d < cand.radius + o.radius + feather_of(cand) + feather_of(o) + 2.0)
                return false;
        }
    }
    return true;
}

SmearObject place_object(SmearObject::Kind kind, int radius_min, int radius_max,
                         const SmearSpec& spec,
                         const std::vector<SmearObject>& placed, SplitMix64& rng) {
    for (int attempt = 0; attempt < kMaxPlacementAttempts; ++attempt) {
        SmearObject cand;
        cand.kind = kind;
        cand.radius = rng.next_int(radius_min, radius_max);
        const int margin =
            cand.radius + static_cast<int>(std::ceil(feather_of(cand))) + 1;
        if (2 * margin >= spec.width || 2 * margin >= spec.height)
            throw PlacementError("generate: object does not fit in the frame");
        cand.cx = rng.next_int(margin, spec.width - 1 - margin);
        cand.cy = rng.next_int(margin, spec.height - 1 - margin);
        if (placement_ok(cand, placed)) return cand;
    }
    throw PlacementError("generate: no admissible position found");
}

/// 1 inside the nominal disk, linear falloff across the feather ring.
double coverage(const SmearObject& o, int x, int y) {
    const double dx = x - o.cx;
    const double dy = y - o.cy;
    const double d2 = dx * dx + dy * dy;
    const double feather = feather_of(o);
    const double outer = o.radius + feather;
    if (d2 >= outer * outer) return 0.0;
    const double d = std::sqrt(d2);
    if (d <= o.radius) return 1.0;
    return (outer - d) / feather;
}

}  // namespace

std::pair<ColorImage, GroundTruth> generate(const SmearSpec& spec) {
    validate(spec);

    SplitMix64 rng(spec.seed);
    GroundTruth gt;
    gt.width = spec.width;
    gt.height = spec.height;
    gt.seed = spec.seed;

    for (int i = 0; i < spec.rbc_count; ++i)
        gt.objects.push_back(place_object(SmearObject::Kind::Rbc,
                                          spec.rbc_radius_min, spec.rbc_radius_max,
                                          spec, gt.objects, rng));
    for (int i = 0; i < spec.parasite_count; ++i)
        gt.objects.push_back(place_object(SmearObject::Kind::Parasite,
                                          spec.parasite_radius_min,
                                          spec.parasite_radius_max, spec,
                                          gt.objects, rng));

    const Rgb bg{static_cast<double>(spec.background_level + kBgOffsetR),
                 static_cast<double>(spec.background_level + kBgOffsetG),
                 static_cast<double>(spec.background_level + kBgOffsetB)};
    const Rgb rbc{bg.r - kRbcDropR, bg.g - kRbcDropG, bg.b - kRbcDropB};
    const Rgb parasite{bg.r - kParasiteDropR, bg.g - kParasiteDropG,
                       bg.b - kParasiteDropB};

    ColorImage img(spec.width, spec.height);
    const double span = std::max(1, spec.width + spec.height - 2);

    for (int y = 0; y < spec.height; ++y) {
        for (int x = 0; x < spec.width; ++x) {
            Rgb c = bg;
            for (const auto& o : gt.objects) {
                const double a = coverage(o, x, y);
                if (a <= 0.0) continue;
                const Rgb& oc = o.kind == SmearObject::Kind::Rbc ? rbc : parasite;
                c.r = c.r + a * (oc.r - c.r);
                c.g = c.g + a * (oc.g - c.g);
                c.b = c.b + a * (oc.b - c.b);
            }

            // diagonal illumination ramp, then channel-coupled grain so
            // the hue survives the noise
            const double illum =
                spec.illumination_amplitude * ((x + y) / span - 0.5);
            const double amp = gt.any_parasite_contains(x, y)
                                   ? static_cast<double>(spec.texture_amplitude)
                                   : kBaseNoise;
            const double noise = amp * (2.0 * rng.next_double() - 1.0);

            const std::size_t i = img.r.idx(x, y);
            img.r.data[i] = quantize(c.r + illum + noise);
            img.g.data[i] = quantize(c.g + illum + noise);
            img.b.data[i] = quantize(c.b + illum + noise);
        }
    }
    return {std::move(img), std::move(gt)};
}

std::string serialize_ground_truth(const GroundTruth& gt) {
    nlohmann::ordered_json j;
    j["width"] = gt.width;
    j["height"] = gt.height;
    j["seed"] = gt.seed;
    j["objects"] = nlohmann::ordered_json::array();
    for (const auto& o : gt.objects) {
        nlohmann::ordered_json jo;
        jo["kind"] = o.kind == SmearObject::Kind::Rbc ? "rbc" : "parasite";
        jo["cx"] = o.cx;
        jo["cy"] = o.cy;
        jo["radius"] = o.radius;
        j["objects"].push_back(std::move(jo));
    }
    return j.dump(2) + "\n";
}

GroundTruth parse_ground_truth(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("ground truth: ") + e.what());
    }
    if (!j.is_object())
        throw std::invalid_argument("ground truth: top level is not an object");

    GroundTruth gt;
    try {
        gt.width = j.at("width").get<int>();
        gt.height = j.at("height").get<int>();
        gt.seed = j.at("seed").get<std::uint64_t>();
        for (const auto& jo : j.at("objects")) {
            SmearObject o;
            const std::string kind = jo.at("kind").get<std::string>();
            if (kind == "rbc")
                o.kind = SmearObject::Kind::Rbc;
            else if (kind == "parasite")
                o.kind = SmearObject::Kind::Parasite;
            else
                throw std::invalid_argument("ground truth: unknown kind " + kind);
            o.cx = jo.at("cx").get<int>();
            o.cy = jo.at("cy").get<int>();
            o.radius = jo.at("radius").get<int>();
            gt.objects.push_back(o);
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("ground truth: ") + e.what());
    }
    return gt;
}

void Metrics::add(const Metrics& other) {
    true_positives += other.true_positives;
    false_positives += other.false_positives;
    true_negatives += other.true_negatives;
    false_negatives += other.false_negatives;
    matched_detections += other.matched_detections;
    unmatched_detections += other.unmatched_detections;
}

int Metrics::images() const {
    return true_positives + false_positives + true_negatives + false_negatives;
}

double Metrics::accuracy() const {
    const int n = images();
    if (n == 0) return 1.0;
    return static_cast<double>(true_positives + true_negatives) / n;
}

double Metrics::sensitivity() const {
    const int n = true_positives + false_negatives;
    if (n == 0) return 1.0;
    return static_cast<double>(true_positives) / n;
}

double Metrics::specificity() const {
    const int n = true_negatives + false_positives;
    if (n == 0) return 1.0;
    return static_cast<double>(true_negatives) / n;
}

Metrics score(const DetectionReport& report, const GroundTruth& gt) {
    Metrics m;
    const bool truth = gt.parasite_count() > 0;
    if (report.plasmodium_found && truth)
        m.true_positives = 1;
    else if (report.plasmodium_found)
        m.false_positives = 1;
    else if (truth)
        m.false_negatives = 1;
    else
        m.true_negatives = 1;

    for (const auto& c : report.contours) {
        if (!c.is_plasmodium) continue;
        if (gt.any_parasite_contains(c.centroid_x, c.centroid_y))
            ++m.matched_detections;
        else
            ++m.unmatched_detections;
    }
    return m;
}

}  // namespace plasmoscan
