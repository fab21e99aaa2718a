#include "plasmoscan/morph.hpp"

#include <utility>

#include "plasmoscan/detect.hpp"

namespace plasmoscan {

namespace {

void validate(const StructuringElement& se) {
    if (se.size < 1 || se.size % 2 == 0)
        throw std::invalid_argument("StructuringElement: size must be odd");
    if (se.mask.size() != static_cast<std::size_t>(se.size) * se.size)
        throw std::invalid_argument("StructuringElement: mask size mismatch");
    if (!se.cell(se.radius(), se.radius()))
        throw std::invalid_argument("StructuringElement: origin cell must be set");
}

std::vector<std::pair<int, int>> offsets_of(const StructuringElement& se) {
    std::vector<std::pair<int, int>> offs;
    const int r = se.radius();
    for (int ky = 0; ky < se.size; ++ky)
        for (int kx = 0; kx < se.size; ++kx)
            if (se.cell(kx, ky)) offs.emplace_back(kx - r, ky - r);
    return offs;
}

}  // namespace

StructuringElement StructuringElement::square(int size) {
    StructuringElement se;
    se.size = size;
    se.shape = Shape::Square;
    se.mask.assign(static_cast<std::size_t>(size) * size, 1);
    validate(se);
    return se;
}

StructuringElement StructuringElement::disk(int size) {
    StructuringElement se;
    se.size = size;
    se.shape = Shape::Disk;
    se.mask.assign(static_cast<std::size_t>(size) * size, 0);
    const int r = size / 2;
    for (int ky = 0; ky < size; ++ky)
        for (int kx = 0; kx < size; ++kx) {
            const int dx = kx - r;
            const int dy = ky - r;
            if (dx * dx + dy * dy <= r * r)
                se.mask[static_cast<std::size_t>(ky) * size + kx] = 1;
        }
    validate(se);
    return se;
}

StructuringElement reflect(const StructuringElement& se) {
    StructuringElement out = se;
    const int n = se.size;
    for (int ky = 0; ky < n; ++ky)
        for (int kx = 0; kx < n; ++kx)
            out.mask[static_cast<std::size_t>(ky) * n + kx] =
                se.mask[static_cast<std::size_t>(n - 1 - ky) * n + (n - 1 - kx)];
    return out;
}

BinaryImage dilate(const BinaryImage& img, const StructuringElement& se) {
    validate(se);
    const int w = img.width;
    const int h = img.height;
    const auto offs = offsets_of(se);
    BinaryImage out(w, h);

#pragma omp parallel for schedule(static)
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            std::uint8_t hit = 0;
            for (const auto& [dx, dy] : offs) {
                const int sx = x - dx;
                const int sy = y - dy;
                if (sx < 0 || sx >= w || sy < 0 || sy >= h) continue;
                if (img.at(sx, sy)) {
                    hit = 1;
                    break;
                }
            }
            out.at(x, y) = hit;
        }
    }
    return out;
}

BinaryImage erode(const BinaryImage& img, const StructuringElement& se) {
    validate(se);
    const int w = img.width;
    const int h = img.height;
    const auto offs = offsets_of(se);
    BinaryImage out(w, h);

#pragma omp parallel for schedule(static)
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            std::uint8_t all = 1;
            for (const auto& [dx, dy] : offs) {
                const int sx = x + dx;
                const int sy = y + dy;
                if (sx < 0 || sx >= w || sy < 0 || sy >= h || !img.at(sx, sy)) {
                    all = 0;
                    break;
                }
            }
            out.at(x, y) = all;
        }
    }
    return out;
}

BinaryImage close(const BinaryImage& img, const StructuringElement& se) {
    return erode(dilate(img, se), se);
}

BinaryImage remove_small_contours(const BinaryImage& img, std::int64_t min_area) {
    if (min_area < 0)
        throw std::invalid_argument("remove_small_contours: min_area must be >= 0");
    if (min_area <= 1 || img.empty()) return img;

    const LabelMap lm = label_components(img);
    std::vector<std::int64_t> area(static_cast<std::size_t>(lm.count) + 1, 0);
    for (std::int32_t label : lm.labels) ++area[label];

    BinaryImage out(img.width, img.height);
    const std::size_t count = img.data.size();
    for (std::size_t i = 0; i < count; ++i) {
        const std::int32_t label = lm.labels[i];
        out.data[i] = (label != 0 && area[label] >= min_area) ? 1 : 0;
    }
    return out;
}

}  // namespace plasmoscan
