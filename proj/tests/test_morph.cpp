#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "properties.hpp"

using namespace plasmoscan;

namespace {

StructuringElement custom_se(int size, std::vector<std::uint8_t> mask) {
    StructuringElement se;
    se.size = size;
    se.mask = std::move(mask);
    return se;
}

StructuringElement random_custom_se(SplitMix64& rng) {
    const int size = rng.next_below(2) ? 3 : 5;
    std::vector<std::uint8_t> mask(static_cast<std::size_t>(size) * size);
    for (auto& v : mask) v = rng.next_below(100) < 45 ? 1 : 0;
    mask[static_cast<std::size_t>(size / 2) * size + size / 2] = 1;
    return custom_se(size, std::move(mask));
}

}  // namespace

TEST_CASE("element factories") {
    const StructuringElement sq1 = StructuringElement::square(1);
    CHECK(sq1.mask == std::vector<std::uint8_t>{1});

    const StructuringElement sq3 = StructuringElement::square(3);
    CHECK(sq3.mask == std::vector<std::uint8_t>(9, 1));
    CHECK(sq3.radius() == 1);

    const StructuringElement d3 = StructuringElement::disk(3);
    CHECK(d3.mask == std::vector<std::uint8_t>{0, 1, 0, 1, 1, 1, 0, 1, 0});

    const StructuringElement d5 = StructuringElement::disk(5);
    int cells = 0;
    for (const auto v : d5.mask) cells += v;
    CHECK(cells == 13);
    CHECK(d5.cell(2, 2));
    CHECK(d5.cell(2, 0));   // straight reach of 2
    CHECK(d5.cell(1, 1));   // diagonal reach of 1
    CHECK(!d5.cell(0, 0));  // corner is outside the radius

    CHECK_THROWS_AS(StructuringElement::square(0), std::invalid_argument);
    CHECK_THROWS_AS(StructuringElement::square(2), std::invalid_argument);
    CHECK_THROWS_AS(StructuringElement::disk(4), std::invalid_argument);
    CHECK_THROWS_AS(StructuringElement::square(-3), std::invalid_argument);
}

TEST_CASE("operations validate the element") {
    const BinaryImage img(4, 4, 1);
    // origin cell unset
    CHECK_THROWS_AS(dilate(img, custom_se(3, {1, 1, 1, 1, 0, 1, 1, 1, 1})),
                    std::invalid_argument);
    // mask length mismatch
    CHECK_THROWS_AS(erode(img, custom_se(3, {1, 1, 1})), std::invalid_argument);
    // even size
    CHECK_THROWS_AS(dilate(img, custom_se(2, {1, 1, 1, 1})),
                    std::invalid_argument);
}

TEST_CASE("reflect rotates the mask by 180 degrees") {
    const StructuringElement se =
        custom_se(3, {1, 1, 0, 0, 1, 0, 0, 0, 0});
    const StructuringElement r = reflect(se);
    CHECK(r.mask == std::vector<std::uint8_t>{0, 0, 0, 0, 1, 0, 0, 1, 1});

    SplitMix64 rng(7401);
    for (int i = 0; i < 50; ++i) {
        const StructuringElement s = random_custom_se(rng);
        CHECK(reflect(reflect(s)).mask == s.mask);
    }
    CHECK(reflect(StructuringElement::disk(5)).mask ==
          StructuringElement::disk(5).mask);
}

TEST_CASE("dilate matches the stamping oracle") {
    SplitMix64 rng(7402);
    for (int i = 0; i < 150; ++i) {
        const int w = rng.next_int(1, 24);
        const int h = rng.next_int(1, 24);
        const BinaryImage a = oracle::random_mask(rng, w, h, rng.next_int(5, 80));
        const StructuringElement se =
            (i % 3) ? random_custom_se(rng) : props::random_se(rng);
        CHECK(dilate(a, se) == oracle::dilate_set(a, se));
    }
}

TEST_CASE("erode matches the fitting oracle") {
    SplitMix64 rng(7403);
    for (int i = 0; i < 150; ++i) {
        const int w = rng.next_int(1, 24);
        const int h = rng.next_int(1, 24);
        const BinaryImage a = oracle::random_mask(rng, w, h, rng.next_int(20, 95));
        const StructuringElement se =
            (i % 3) ? random_custom_se(rng) : props::random_se(rng);
        CHECK(erode(a, se) == oracle::erode_set(a, se));
    }
}

TEST_CASE("erosion dilation duality") {
    const auto r = props::erosion_dilation_duality(9003, 1000);
    INFO(r.first_failure);
    CHECK(r.failures == 0);
    CHECK(r.cases >= 1000);
}

TEST_CASE("closing is extensive, increasing and idempotent") {
    const auto r = props::closing_properties(9004, 1000);
    INFO(r.first_failure);
    CHECK(r.failures == 0);
    CHECK(r.cases >= 1000);
}

TEST_CASE("border policy pins") {
    // foreground touching the frame erodes away
    const BinaryImage ones(5, 4, 1);
    const BinaryImage er = erode(ones, StructuringElement::square(3));
    for (int y = 0; y < 4; ++y)
        for (int x = 0; x < 5; ++x)
            CHECK(er.at(x, y) == ((x >= 1 && x <= 3 && y >= 1 && y <= 2) ? 1 : 0));

    // a lone corner pixel does not survive closing
    BinaryImage corner(6, 6);
    corner.at(0, 0) = 1;
    CHECK(close(corner, StructuringElement::square(3)).ones_count() == 0);

    // a lone interior pixel does
    BinaryImage center(7, 7);
    center.at(3, 3) = 1;
    CHECK(close(center, StructuringElement::square(3)) == center);

    // dilation stamps the element shape
    const StructuringElement d5 = StructuringElement::disk(5);
    BinaryImage dot(5, 5);
    dot.at(2, 2) = 1;
    const BinaryImage stamped = dilate(dot, d5);
    for (int ky = 0; ky < 5; ++ky)
        for (int kx = 0; kx < 5; ++kx)
            CHECK(stamped.at(kx, ky) == (d5.cell(kx, ky) ? 1 : 0));
}

TEST_CASE("remove_small_contours thresholds by component area") {
    // a diagonal pair (one 8-connected component) and a 2x2 block
    BinaryImage m(8, 4);
    m.at(1, 1) = m.at(2, 2) = 1;
    m.at(5, 1) = m.at(6, 1) = m.at(5, 2) = m.at(6, 2) = 1;

    CHECK(remove_small_contours(m, 0) == m);
    CHECK(remove_small_contours(m, 1) == m);
    CHECK(remove_small_contours(m, 2) == m);

    const BinaryImage only_block = remove_small_contours(m, 3);
    CHECK(only_block.ones_count() == 4);
    CHECK(only_block.at(5, 1) == 1);
    CHECK(only_block.at(1, 1) == 0);

    CHECK(remove_small_contours(m, 4).ones_count() == 4);
    CHECK(remove_small_contours(m, 5).ones_count() == 0);
    CHECK_THROWS_AS(remove_small_contours(m, -1), std::invalid_argument);
}
