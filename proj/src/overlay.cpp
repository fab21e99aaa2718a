#include "plasmoscan/overlay.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

namespace plasmoscan {

namespace {

struct Rgb8 {
    std::uint8_t r, g, b;
};

constexpr Rgb8 kFlagged{255, 40, 40};
constexpr Rgb8 kRejected{60, 90, 255};
constexpr Rgb8 kClearBadge{40, 200, 80};

void set_pixel(ColorImage& img, int x, int y, Rgb8 c) {
    if (x < 0 || y < 0 || x >= img.width() || y >= img.height()) return;
    const std::size_t i = img.r.idx(x, y);
    img.r.data[i] = c.r;
    img.g.data[i] = c.g;
    img.b.data[i] = c.b;
}

// 3x5 glyphs for the digits and the decimal point, rows top to bottom.
const char* glyph_rows(char ch) {
    switch (ch) {
        case '0': return "111101101101111";
        case '1': return "010110010010111";
        case '2': return "111001111100111";
        case '3': return "111001111001111";
        case '4': return "101101111001001";
        case '5': return "111100111001111";
        case '6': return "111100111101111";
        case '7': return "111001001010010";
        case '8': return "111101111101111";
        case '9': return "111101111001111";
        case '.': return "000000000000010";
        default: return nullptr;
    }
}

constexpr int kGlyphW = 3;
constexpr int kGlyphH = 5;
constexpr int kScale = 2;
constexpr int kAdvance = (kGlyphW + 1) * kScale;

void draw_text(ColorImage& img, int x, int y, const std::string& text, Rgb8 c) {
    for (const char ch : text) {
        const char* rows = glyph_rows(ch);
        if (rows) {
            for (int gy = 0; gy < kGlyphH; ++gy)
                for (int gx = 0; gx < kGlyphW; ++gx) {
                    if (rows[gy * kGlyphW + gx] != '1') continue;
                    for (int sy = 0; sy < kScale; ++sy)
                        for (int sx = 0; sx < kScale; ++sx)
                            set_pixel(img, x + gx * kScale + sx,
                                      y + gy * kScale + sy, c);
                }
        }
        x += kAdvance;
    }
}

bool is_boundary(const LabelMap& labels, int x, int y, std::int32_t label) {
    if (x == 0 || y == 0 || x == labels.width - 1 || y == labels.height - 1)
        return true;
    return labels.at(x - 1, y) != label || labels.at(x + 1, y) != label ||
           labels.at(x, y - 1) != label || labels.at(x, y + 1) != label;
}

}  // namespace

ColorImage render_overlay(const ColorImage& img, const LabelMap& labels,
                          const std::vector<ContourVerdict>& contours) {
    if (labels.width != img.width() || labels.height != img.height())
        throw std::invalid_argument("render_overlay: dimension mismatch");

    std::vector<std::uint8_t> flagged(contours.size() + 1, 0);
    std::vector<std::uint8_t> known(contours.size() + 1, 0);
    for (const auto& c : contours) {
        if (c.label < 1 || c.label > static_cast<std::int32_t>(contours.size()))
            throw std::invalid_argument("render_overlay: contour label out of range");
        flagged[c.label] = c.is_plasmodium ? 1 : 0;
        known[c.label] = 1;
    }

    ColorImage out = img;
    for (int y = 0; y < labels.height; ++y) {
        for (int x = 0; x < labels.width; ++x) {
            const std::int32_t label = labels.at(x, y);
            if (!label || !known[label]) continue;
            if (is_boundary(labels, x, y, label))
                set_pixel(out, x, y, flagged[label] ? kFlagged : kRejected);
        }
    }

    bool any_flagged = false;
    for (const auto& c : contours) {
        if (!c.is_plasmodium) continue;
        any_flagged = true;
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.4f", c.local_value);
        std::string text(buf);
        std::replace(text.begin(), text.end(), ',', '.');
        // keep the caption inside the frame
        int tx = static_cast<int>(std::lround(c.centroid_x)) + 4;
        int ty = static_cast<int>(std::lround(c.centroid_y)) - kGlyphH * kScale / 2;
        const int text_w = kAdvance * static_cast<int>(text.size());
        if (tx + text_w > out.width()) tx = std::max(0, out.width() - text_w);
        if (ty + kGlyphH * kScale > out.height())
            ty = std::max(0, out.height() - kGlyphH * kScale);
        if (ty < 0) ty = 0;
        draw_text(out, tx, ty, text, kFlagged);
    }

    if (!any_flagged) {
        for (int y = 2; y < 12; ++y)
            for (int x = 2; x < 12; ++x) set_pixel(out, x, y, kClearBadge);
    }
    return out;
}

}  // namespace plasmoscan
