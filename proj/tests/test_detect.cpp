#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "properties.hpp"
#include "plasmoscan/synth.hpp"

using namespace plasmoscan;

TEST_CASE("labeling matches the flood-fill oracle on 100 random masks") {
    SplitMix64 rng(1601);
    for (int i = 0; i < 100; ++i) {
        const int w = rng.next_int(1, 40);
        const int h = rng.next_int(1, 40);
        const BinaryImage mask = oracle::random_mask(rng, w, h, rng.next_int(10, 80));
        const LabelMap got = label_components(mask);
        const LabelMap want = oracle::flood_labels(mask);
        CHECK(got.count == want.count);
        CHECK(got.labels == want.labels);
    }
}

TEST_CASE("diagonal neighbors join under 8-connectivity") {
    BinaryImage m(2, 2);
    m.at(0, 0) = m.at(1, 1) = 1;
    const LabelMap lm = label_components(m);
    CHECK(lm.count == 1);
    CHECK(lm.at(0, 0) == 1);
    CHECK(lm.at(1, 1) == 1);
}

TEST_CASE("labels follow raster order of first appearance") {
    // a U shape whose arms merge on the bottom row, then a later bar
    BinaryImage m(5, 3);
    m.at(0, 0) = m.at(2, 0) = 1;
    m.at(0, 1) = m.at(2, 1) = m.at(4, 1) = 1;
    m.at(0, 2) = m.at(1, 2) = m.at(2, 2) = m.at(4, 2) = 1;
    const LabelMap lm = label_components(m);
    CHECK(lm.count == 2);
    CHECK(lm.at(0, 0) == 1);
    CHECK(lm.at(2, 0) == 1);  // merged into the earlier arm
    CHECK(lm.at(1, 2) == 1);
    CHECK(lm.at(4, 1) == 2);
    CHECK(lm.at(4, 2) == 2);
}

TEST_CASE("only 8-connectivity is supported") {
    const BinaryImage m(3, 3, 1);
    CHECK_THROWS_AS(label_components(m, 4), std::invalid_argument);
    CHECK_NOTHROW(label_components(m, 8));
}

TEST_CASE("an empty mask labels nothing") {
    const LabelMap lm = label_components(BinaryImage(6, 4));
    CHECK(lm.count == 0);
    for (const auto v : lm.labels) CHECK(v == 0);
}

namespace {

/// Two contours: a 2-pixel bar at (1,1)-(2,1) and a lone pixel at (4,2).
struct Fixture {
    BinaryImage mask{6, 4};
    BinaryImage grad{6, 4};
    LabelMap lm;

    Fixture() {
        mask.at(1, 1) = mask.at(2, 1) = 1;
        mask.at(4, 2) = 1;
        grad.at(1, 1) = 1;
        grad.at(4, 2) = 1;
        grad.at(0, 0) = 1;
        lm = label_components(mask);
    }
};

}  // namespace

TEST_CASE("density helpers") {
    const Fixture f;
    REQUIRE(f.lm.count == 2);
    CHECK(global_density(f.grad) == 3.0 / 24.0);
    CHECK(contour_density(f.lm, 1, f.grad) == 0.5);
    CHECK(contour_density(f.lm, 2, f.grad) == 1.0);
    CHECK_THROWS_AS(contour_density(f.lm, 0, f.grad), std::invalid_argument);
    CHECK_THROWS_AS(contour_density(f.lm, 3, f.grad), std::invalid_argument);
    CHECK_THROWS_AS(contour_density(f.lm, 1, BinaryImage(5, 4)),
                    std::invalid_argument);
    CHECK_THROWS_AS(global_density(BinaryImage()), std::invalid_argument);
}

TEST_CASE("decision rule truth table") {
    CHECK(plasmodium_decision(0.1559, 0.0088, 5.0));
    CHECK(plasmodium_decision(0.1023, 0.0088, 5.0));
    CHECK(!plasmodium_decision(0.04, 0.0088, 5.0));
    CHECK(plasmodium_decision(5.0 * 0.0088, 0.0088, 5.0));  // boundary counts
    CHECK(!plasmodium_decision(0.0, 0.0, 5.0));      // no texture, no call
    CHECK(!plasmodium_decision(0.0, 0.1, 5.0));
    CHECK(plasmodium_decision(0.001, 0.0, 5.0));
    CHECK(plasmodium_decision(0.5, 0.1, 5.0));
    CHECK(!plasmodium_decision(0.49, 0.1, 5.0));
    CHECK(plasmodium_decision(0.3, 0.9, 0.0));
}

TEST_CASE("classify reports areas, centroids and verdicts") {
    const Fixture f;
    PipelineConfig cfg;
    cfg.min_area = 1;
    cfg.ratio_factor = 3.0;
    const DetectionReport r = classify(f.lm, f.grad, cfg);

    CHECK(r.width == 6);
    CHECK(r.height == 4);
    CHECK(r.global_value == 3.0 / 24.0);
    REQUIRE(r.contours.size() == 2);

    const ContourVerdict& a = r.contours[0];
    CHECK(a.label == 1);
    CHECK(a.area == 2);
    CHECK(a.centroid_x == 1.5);
    CHECK(a.centroid_y == 1.0);
    CHECK(a.local_value == 0.5);
    CHECK(a.is_plasmodium);  // 0.5 >= 3 * 0.125

    const ContourVerdict& b = r.contours[1];
    CHECK(b.label == 2);
    CHECK(b.area == 1);
    CHECK(b.centroid_x == 4.0);
    CHECK(b.centroid_y == 2.0);
    CHECK(b.local_value == 1.0);
    CHECK(b.is_plasmodium);
    CHECK(r.plasmodium_found);
}

TEST_CASE("min_area suppresses small contours from the verdict") {
    const Fixture f;
    PipelineConfig cfg;
    cfg.min_area = 2;
    cfg.ratio_factor = 3.0;
    const DetectionReport r = classify(f.lm, f.grad, cfg);
    CHECK(r.contours[0].is_plasmodium);
    CHECK(!r.contours[1].is_plasmodium);  // area 1 below the floor
    CHECK(r.plasmodium_found);

    cfg.min_area = 3;
    const DetectionReport r2 = classify(f.lm, f.grad, cfg);
    CHECK(!r2.contours[0].is_plasmodium);
    CHECK(!r2.contours[1].is_plasmodium);
    CHECK(!r2.plasmodium_found);
}

TEST_CASE("classify with no contours still reports the global value") {
    const BinaryImage empty_mask(6, 4);
    BinaryImage grad(6, 4);
    grad.at(3, 3) = 1;
    const DetectionReport r =
        classify(label_components(empty_mask), grad, PipelineConfig{});
    CHECK(r.contours.empty());
    CHECK(!r.plasmodium_found);
    CHECK(r.global_value == 1.0 / 24.0);
}

TEST_CASE("classify rejects mismatched dimensions") {
    const LabelMap lm = label_components(BinaryImage(4, 4));
    CHECK_THROWS_AS(classify(lm, BinaryImage(4, 5), PipelineConfig{}),
                    std::invalid_argument);
}

TEST_CASE("density identity across random labelings") {
    const auto r = props::density_identity(9007, 1000);
    INFO(r.first_failure);
    CHECK(r.failures == 0);
    CHECK(r.cases >= 1000);
}

TEST_CASE("raising the ratio factor never flags more") {
    const auto r = props::k_monotonicity(9008, 1000);
    INFO(r.first_failure);
    CHECK(r.failures == 0);
    CHECK(r.cases >= 1000);
}

TEST_CASE("verdicts are translation invariant") {
    const auto r = props::translation_invariance(9009, 1000);
    INFO(r.first_failure);
    CHECK(r.failures == 0);
    CHECK(r.cases >= 1000);
}

TEST_CASE("pipeline flags a textured parasite and spares clean smears") {
    SmearSpec pos;
    pos.width = pos.height = 192;
    pos.rbc_count = 8;
    pos.parasite_count = 2;
    pos.seed = 71;
    const auto [pimg, pgt] = generate(pos);
    const DetectionReport pr = run_pipeline(pimg, PipelineConfig{});
    CHECK(pr.plasmodium_found);
    const Metrics pm = score(pr, pgt);
    CHECK(pm.true_positives == 1);
    CHECK(pm.matched_detections >= 1);
    CHECK(pm.unmatched_detections == 0);

    SmearSpec neg = pos;
    neg.parasite_count = 0;
    neg.seed = 72;
    const auto [nimg, ngt] = generate(neg);
    const DetectionReport nr = run_pipeline(nimg, PipelineConfig{});
    CHECK(!nr.plasmodium_found);
    CHECK(score(nr, ngt).true_negatives == 1);
}

TEST_CASE("a constant tile yields an empty blank report") {
    const ColorImage black(32, 32, 0, 0, 0);
    const PipelineResult res = run_pipeline_traced(black, PipelineConfig{});
    CHECK(res.blank_tile);
    CHECK(res.report.contours.empty());
    CHECK(!res.report.plasmodium_found);
    CHECK(res.report.threshold == 0.0);
    CHECK(res.report.global_value == 0.0);
    CHECK(res.report.width == 32);
    CHECK(res.report.stage_digests.size() == 9);
}

TEST_CASE("stage digests are deterministic and input-sensitive") {
    SmearSpec spec;
    spec.width = spec.height = 96;
    spec.rbc_count = 3;
    spec.seed = 9;
    const auto [img, gt] = generate(spec);
    const PipelineResult a = run_pipeline_traced(img, PipelineConfig{});
    const PipelineResult b = run_pipeline_traced(img, PipelineConfig{});
    REQUIRE(a.report.stage_digests.size() == b.report.stage_digests.size());
    for (std::size_t i = 0; i < a.report.stage_digests.size(); ++i) {
        CHECK(a.report.stage_digests[i].stage == b.report.stage_digests[i].stage);
        CHECK(a.report.stage_digests[i].hash == b.report.stage_digests[i].hash);
    }

    spec.seed = 10;
    const auto [other, gt2] = generate(spec);
    const PipelineResult c = run_pipeline_traced(other, PipelineConfig{});
    bool any_differs = false;
    for (std::size_t i = 0; i < a.report.stage_digests.size(); ++i)
        any_differs |= a.report.stage_digests[i].hash != c.report.stage_digests[i].hash;
    CHECK(any_differs);
}
