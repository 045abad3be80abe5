#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "nrtkit/modring.hpp"

namespace nrtkit {

/// Plain integer raster, row-major. Source images before embedding and
/// lifted reconstructions after it.
struct PixelImage {
    u32 rows = 0;
    u32 cols = 0;
    std::vector<i64> v;

    i64& at(u32 r, u32 c) { return v[std::size_t(r) * cols + c]; }
    i64 at(u32 r, u32 c) const { return v[std::size_t(r) * cols + c]; }
};

inline PixelImage make_pixel_image(u32 rows, u32 cols, i64 fill = 0) {
    if (rows == 0 || cols == 0) throw std::invalid_argument("PixelImage: empty dimensions");
    return PixelImage{rows, cols, std::vector<i64>(std::size_t(rows) * cols, fill)};
}

}  // namespace nrtkit
