#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "properties.hpp"
#include "plasmoscan/report_json.hpp"
#include "plasmoscan/serial.hpp"
#include "plasmoscan/synth.hpp"

using namespace plasmoscan;

// The parallel kernels promise results bit-identical to the serial
// reference, so every comparison here is exact.

TEST_CASE("convolve agrees with the serial reference") {
    SplitMix64 rng(3801);
    for (int i = 0; i < 300; ++i) {
        const int w = rng.next_int(1, 64);
        const int h = rng.next_int(1, 64);
        const GrayImage img = oracle::random_gray(rng, w, h);
        std::vector<double> weights;
        const int size = (i % 2) ? 5 : 3;
        for (int k = 0; k < size * size; ++k)
            weights.push_back(rng.next_double() * 4.0 - 2.0);
        const Kernel kernel(size, weights);
        CHECK(convolve(img, kernel) == serial::convolve(img, kernel));
    }
}

TEST_CASE("histogram agrees with the serial reference") {
    SplitMix64 rng(3802);
    for (int i = 0; i < 300; ++i) {
        const GrayImage img =
            oracle::random_gray(rng, rng.next_int(1, 80), rng.next_int(1, 80));
        CHECK(histogram(img) == serial::histogram(img));
    }
}

TEST_CASE("dilate and erode agree with the serial reference") {
    SplitMix64 rng(3803);
    for (int i = 0; i < 300; ++i) {
        const int w = rng.next_int(1, 48);
        const int h = rng.next_int(1, 48);
        const BinaryImage mask = oracle::random_mask(rng, w, h, rng.next_int(10, 90));
        const StructuringElement se = props::random_se(rng);
        CHECK(dilate(mask, se) == serial::dilate(mask, se));
        CHECK(erode(mask, se) == serial::erode(mask, se));
    }
}

TEST_CASE("gradient magnitude agrees with the serial reference") {
    SplitMix64 rng(3804);
    for (int i = 0; i < 300; ++i) {
        const GrayImage img =
            oracle::random_gray(rng, rng.next_int(1, 64), rng.next_int(1, 64));
        CHECK(gradient_magnitude(img) == serial::gradient_magnitude(img));
    }
}

TEST_CASE("repeated pipeline runs serialize identically") {
    SmearSpec spec;
    spec.width = spec.height = 160;
    spec.rbc_count = 6;
    spec.parasite_count = 1;
    spec.seed = 77;
    const auto [img, gt] = generate(spec);

    const PipelineResult a = run_pipeline_traced(img, PipelineConfig{});
    const PipelineResult b = run_pipeline_traced(img, PipelineConfig{});
    CHECK(serialize_report(a.report) == serialize_report(b.report));
    REQUIRE(a.report.stage_digests.size() == b.report.stage_digests.size());
    for (std::size_t i = 0; i < a.report.stage_digests.size(); ++i)
        CHECK(a.report.stage_digests[i].hash == b.report.stage_digests[i].hash);
}
