#pragma once

#include <stdexcept>
#include <string>

#include "plasmoscan/imgcore.hpp"

namespace plasmoscan {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Loads PNG, binary PPM (P6) or binary PGM (P5), dispatching on the
/// file's magic bytes. Grayscale sources are replicated across planes.
ColorImage load_color(const std::string& path);

/// Loads and reduces to one plane; PGM sources stay untouched, color
/// sources go through the plane average.
GrayImage load_gray(const std::string& path);

void save_png(const std::string& path, const ColorImage& img);
void save_png(const std::string& path, const GrayImage& img);
void save_ppm(const std::string& path, const ColorImage& img);
void save_pgm(const std::string& path, const GrayImage& img);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace plasmoscan
