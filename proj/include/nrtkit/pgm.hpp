#pragma once

#include <cctype>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "nrtkit/pixel_image.hpp"

namespace nrtkit {

namespace detail {

inline int pgm_next_token(std::istream& in) {
    int c = in.get();
    while (c != EOF) {
        if (c == '#') {
            while (c != EOF && c != '\n') c = in.get();
        } else if (!std::isspace(c)) {
            return c;
        }
        c = in.get();
    }
    return EOF;
}

inline u64 pgm_read_number(std::istream& in) {
    int c = pgm_next_token(in);
    if (c == EOF || !std::isdigit(c)) throw std::runtime_error("pgm: malformed header");
    u64 value = 0;
    while (c != EOF && std::isdigit(c)) {
        value = value * 10 + u64(c - '0');
        c = in.get();
    }
    return value;
}

}  // namespace detail

/// Reads binary (P5) or ASCII (P2) PGM, 8-bit only.
inline PixelImage read_pgm(std::istream& in) {
    char magic[2] = {0, 0};
    in.read(magic, 2);
    if (magic[0] != 'P' || (magic[1] != '5' && magic[1] != '2'))
        throw std::runtime_error("pgm: expected P5 or P2 magic");
    const bool binary = magic[1] == '5';
    const u64 cols = detail::pgm_read_number(in);
    const u64 rows = detail::pgm_read_number(in);
    const u64 maxval = detail::pgm_read_number(in);
    if (rows == 0 || cols == 0 || rows > 1u << 16 || cols > 1u << 16)
        throw std::runtime_error("pgm: unreasonable dimensions");
    if (maxval == 0 || maxval > 255) throw std::runtime_error("pgm: only 8-bit images supported");
    PixelImage img = make_pixel_image(u32(rows), u32(cols));
    if (binary) {
        // The maxval parser consumed the single whitespace byte separating
        // the header from the raster.
        std::string raster(std::size_t(rows) * cols, '\0');
        in.read(raster.data(), std::streamsize(raster.size()));
        if (std::size_t(in.gcount()) != raster.size()) throw std::runtime_error("pgm: short raster");
        for (std::size_t i = 0; i < raster.size(); ++i)
            img.v[i] = i64(static_cast<unsigned char>(raster[i]));
    } else {
        for (i64& px : img.v) px = i64(detail::pgm_read_number(in));
    }
    for (i64 px : img.v) {
        if (px < 0 || u64(px) > maxval) throw std::runtime_error("pgm: sample exceeds maxval");
    }
    return img;
}

inline PixelImage read_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("pgm: cannot open " + path);
    return read_pgm(in);
}

/// Writes binary P5, 8-bit. The optional comment goes right below the
/// magic line.
inline void write_pgm(std::ostream& out, const PixelImage& img, const std::string& comment = "") {
    out << "P5\n";
    if (!comment.empty()) out << "# " << comment << "\n";
    out << img.cols << " " << img.rows << "\n255\n";
    std::string raster;
    raster.reserve(img.v.size());
    for (i64 px : img.v) {
        if (px < 0 || px > 255) throw std::domain_error("pgm: pixel out of 8-bit range");
        raster.push_back(char(px));
    }
    out.write(raster.data(), std::streamsize(raster.size()));
}

inline void write_pgm(const std::string& path, const PixelImage& img,
                      const std::string& comment = "") {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("pgm: cannot write " + path);
    write_pgm(out, img, comment);
}

}  // namespace nrtkit
