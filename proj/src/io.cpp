#include "plasmoscan/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include <png.h>

namespace plasmoscan {

namespace {

struct FileCloser {
    std::FILE* fp = nullptr;
    ~FileCloser() {
        if (fp) std::fclose(fp);
    }
};

ColorImage load_png_impl(const std::string& path, std::FILE* fp) {
    png_structp png =
        png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw IoError("png: out of memory reading " + path);
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw IoError("png: out of memory reading " + path);
    }

    std::vector<std::uint8_t> buffer;
    std::vector<png_bytep> rows;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw IoError("png: failed to decode " + path);
    }

    png_init_io(png, fp);
    png_read_info(png, info);

    png_uint_32 w = 0;
    png_uint_32 h = 0;
    int bit_depth = 0;
    int color_type = 0;
    png_get_IHDR(png, info, &w, &h, &bit_depth, &color_type, nullptr, nullptr,
                 nullptr);

    if (bit_depth == 16) png_set_strip_16(png);
    if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8)
        png_set_expand_gray_1_2_4_to_8(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
    if (color_type == PNG_COLOR_TYPE_GRAY ||
        color_type == PNG_COLOR_TYPE_GRAY_ALPHA)
        png_set_gray_to_rgb(png);
    png_set_strip_alpha(png);
    png_set_interlace_handling(png);
    png_read_update_info(png, info);

    const std::size_t rowbytes = png_get_rowbytes(png, info);
    if (rowbytes != static_cast<std::size_t>(w) * 3) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw IoError("png: unexpected layout in " + path);
    }

    buffer.resize(rowbytes * h);
    rows.resize(h);
    for (png_uint_32 y = 0; y < h; ++y) rows[y] = buffer.data() + y * rowbytes;

    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);

    ColorImage img(static_cast<int>(w), static_cast<int>(h));
    for (std::size_t i = 0; i < img.r.data.size(); ++i) {
        img.r.data[i] = buffer[3 * i];
        img.g.data[i] = buffer[3 * i + 1];
        img.b.data[i] = buffer[3 * i + 2];
    }
    return img;
}

/// Reads one whitespace-delimited unsigned value, skipping # comments.
long pnm_value(std::FILE* fp, const std::string& path) {
    int c = std::fgetc(fp);
    while (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '#') {
        if (c == '#')
            while (c != '\n' && c != EOF) c = std::fgetc(fp);
        c = std::fgetc(fp);
    }
    if (c < '0' || c > '9') throw IoError("pnm: malformed header in " + path);
    long v = 0;
    while (c >= '0' && c <= '9') {
        v = v * 10 + (c - '0');
        if (v > 1000000000L) throw IoError("pnm: header value overflow in " + path);
        c = std::fgetc(fp);
    }
    if (c != EOF) std::ungetc(c, fp);
    return v;
}

ColorImage load_pnm_impl(const std::string& path, std::FILE* fp, int channels) {
    char magic[2];
    if (std::fread(magic, 1, 2, fp) != 2)
        throw IoError("pnm: truncated header in " + path);
    const long w = pnm_value(fp, path);
    const long h = pnm_value(fp, path);
    const long maxval = pnm_value(fp, path);
    if (w < 1 || h < 1 || maxval < 1 || maxval > 255)
        throw IoError("pnm: unsupported header in " + path);
    const int sep = std::fgetc(fp);
    if (sep != ' ' && sep != '\t' && sep != '\r' && sep != '\n')
        throw IoError("pnm: malformed header in " + path);

    const std::size_t n =
        static_cast<std::size_t>(w) * static_cast<std::size_t>(h) * channels;
    std::vector<std::uint8_t> raw(n);
    if (std::fread(raw.data(), 1, n, fp) != n)
        throw IoError("pnm: truncated pixel data in " + path);

    if (maxval != 255) {
        for (auto& v : raw) {
            const long clipped = std::min<long>(v, maxval);
            v = static_cast<std::uint8_t>(
                std::lround(clipped * 255.0 / static_cast<double>(maxval)));
        }
    }

    ColorImage img(static_cast<int>(w), static_cast<int>(h));
    if (channels == 3) {
        for (std::size_t i = 0; i < img.r.data.size(); ++i) {
            img.r.data[i] = raw[3 * i];
            img.g.data[i] = raw[3 * i + 1];
            img.b.data[i] = raw[3 * i + 2];
        }
    } else {
        img.r.data = raw;
        img.g.data = raw;
        img.b.data = std::move(raw);
    }
    return img;
}

void save_png_impl(const std::string& path, int width, int height,
                   int color_type, std::vector<std::uint8_t>& buffer) {
    const std::size_t rowbytes = buffer.size() / height;
    std::vector<png_bytep> rows(height);
    for (int y = 0; y < height; ++y)
        rows[static_cast<std::size_t>(y)] = buffer.data() + y * rowbytes;

    std::FILE* fp = std::fopen(path.c_str(), "wb");
    if (!fp) throw IoError("cannot open " + path + " for writing");
    FileCloser closer{fp};

    png_structp png =
        png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw IoError("png: out of memory writing " + path);
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw IoError("png: out of memory writing " + path);
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw IoError("png: failed to encode " + path);
    }

    png_init_io(png, fp);
    // fixed filter and level keep the byte stream reproducible
    png_set_filter(png, 0, PNG_FILTER_NONE);
    png_set_compression_level(png, 6);
    png_set_IHDR(png, info, static_cast<png_uint_32>(width),
                 static_cast<png_uint_32>(height), 8, color_type,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                 PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    png_write_image(png, rows.data());
    png_write_end(png, info);
    png_destroy_write_struct(&png, &info);

    if (std::fflush(fp) != 0 || std::ferror(fp))
        throw IoError("short write to " + path);
}

}  // namespace

ColorImage load_color(const std::string& path) {
    std::FILE* fp = std::fopen(path.c_str(), "rb");
    if (!fp) throw IoError("cannot open " + path);
    FileCloser closer{fp};

    const int c0 = std::fgetc(fp);
    const int c1 = std::fgetc(fp);
    if (c0 == EOF || c1 == EOF) throw IoError("truncated file " + path);
    std::rewind(fp);

    if (c0 == 0x89 && c1 == 'P') return load_png_impl(path, fp);
    if (c0 == 'P' && c1 == '6') return load_pnm_impl(path, fp, 3);
    if (c0 == 'P' && c1 == '5') return load_pnm_impl(path, fp, 1);
    throw IoError("unrecognized image format in " + path);
}

GrayImage load_gray(const std::string& path) {
    // replicated planes average back to the source value exactly
    return to_gray(load_color(path));
}

void save_png(const std::string& path, const ColorImage& img) {
    if (img.empty() || !img.planes_match())
        throw IoError("refusing to write empty or ragged image to " + path);
    std::vector<std::uint8_t> buffer(img.r.data.size() * 3);
    for (std::size_t i = 0; i < img.r.data.size(); ++i) {
        buffer[3 * i] = img.r.data[i];
        buffer[3 * i + 1] = img.g.data[i];
        buffer[3 * i + 2] = img.b.data[i];
    }
    save_png_impl(path, img.width(), img.height(), PNG_COLOR_TYPE_RGB, buffer);
}

void save_png(const std::string& path, const GrayImage& img) {
    if (img.empty())
        throw IoError("refusing to write empty image to " + path);
    std::vector<std::uint8_t> buffer = img.data;
    save_png_impl(path, img.width, img.height, PNG_COLOR_TYPE_GRAY, buffer);
}

void save_ppm(const std::string& path, const ColorImage& img) {
    if (img.empty() || !img.planes_match())
        throw IoError("refusing to write empty or ragged image to " + path);
    std::FILE* fp = std::fopen(path.c_str(), "wb");
    if (!fp) throw IoError("cannot open " + path + " for writing");
    FileCloser closer{fp};

    std::fprintf(fp, "P6\n%d %d\n255\n", img.width(), img.height());
    std::vector<std::uint8_t> row(static_cast<std::size_t>(img.width()) * 3);
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            row[3 * static_cast<std::size_t>(x)] = img.r.at(x, y);
            row[3 * static_cast<std::size_t>(x) + 1] = img.g.at(x, y);
            row[3 * static_cast<std::size_t>(x) + 2] = img.b.at(x, y);
        }
        if (std::fwrite(row.data(), 1, row.size(), fp) != row.size())
            throw IoError("short write to " + path);
    }
    if (std::fflush(fp) != 0 || std::ferror(fp))
        throw IoError("short write to " + path);
}

void save_pgm(const std::string& path, const GrayImage& img) {
    if (img.empty())
        throw IoError("refusing to write empty image to " + path);
    std::FILE* fp = std::fopen(path.c_str(), "wb");
    if (!fp) throw IoError("cannot open " + path + " for writing");
    FileCloser closer{fp};

    std::fprintf(fp, "P5\n%d %d\n255\n", img.width, img.height);
    if (std::fwrite(img.data.data(), 1, img.data.size(), fp) != img.data.size())
        throw IoError("short write to " + path);
    if (std::fflush(fp) != 0 || std::ferror(fp))
        throw IoError("short write to " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream out;
    out << in.rdbuf();
    if (in.bad()) throw IoError("read failure on " + path);
    return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << content;
    out.flush();
    if (!out) throw IoError("write failure on " + path);
}

}  // namespace plasmoscan
