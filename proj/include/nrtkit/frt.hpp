#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "nrtkit/modring.hpp"
#include "nrtkit/ntt.hpp"
#include "nrtkit/pixel_image.hpp"

namespace nrtkit {

// Geometry conventions, shared by every module downstream:
//   - img(x, y): x indexes the N rows, y the N columns of the grid.
//   - Projection lines are the congruences y = m*x + t (mod N), traced
//     along the vector (1, m); the extra perpendicular projection runs
//     along (0, 1) and its bins are the row sums, indexed by x.
//   - An embedded Q x P image occupies rows 0..Q-1; rows Q..N-1 stay zero.

/// One of the N+1 projection directions: a slope m in [0, N) or the
/// perpendicular direction.
struct Angle {
    static constexpr u32 kPerp = 0xFFFFFFFFu;

    u32 m = 0;

    static constexpr Angle slope(u32 value) { return Angle{value}; }
    static constexpr Angle perp() { return Angle{kPerp}; }
    constexpr bool is_perp() const { return m == kPerp; }
    constexpr bool operator==(const Angle&) const = default;
};

/// Row index of an angle inside an (N+1)-row projection set: slopes first,
/// the perpendicular projection last.
inline u32 angle_row(Angle a, u32 n) { return a.is_perp() ? n : a.m; }

struct ImageGrid {
    ModRing ring;
    u32 n = 0;     // grid side, prime
    u32 rows = 0;  // embedded row extent Q
    u32 cols = 0;  // embedded column extent P
    std::vector<u32> v;

    u32& at(u32 x, u32 y) { return v[std::size_t(x) * n + y]; }
    u32 at(u32 x, u32 y) const { return v[std::size_t(x) * n + y]; }
};

inline ImageGrid make_grid(const ModRing& ring, u32 n, u32 rows, u32 cols) {
    if (rows > n || cols > n) throw std::invalid_argument("ImageGrid: embedding exceeds grid");
    ImageGrid g;
    g.ring = ring;
    g.n = n;
    g.rows = rows;
    g.cols = cols;
    g.v.assign(std::size_t(n) * n, 0);
    return g;
}

/// The N+1 projection rows (slopes 0..N-1 plus the perpendicular row) with
/// a known/missing mask; zero is a legal projection value, so missing rows
/// are tracked explicitly.
struct FrtSpace {
    ModRing ring;
    u32 n = 0;
    std::vector<std::vector<u32>> rows;  // n+1 rows of length n
    std::vector<bool> known;

    std::vector<u32>& row(Angle a) { return rows[angle_row(a, n)]; }
    const std::vector<u32>& row(Angle a) const { return rows[angle_row(a, n)]; }
    bool is_known(Angle a) const { return known[angle_row(a, n)]; }
    void set_row(Angle a, std::vector<u32> values) {
        rows[angle_row(a, n)] = std::move(values);
        known[angle_row(a, n)] = true;
    }

    u32 known_count() const {
        u32 c = 0;
        for (bool k : known) c += k;
        return c;
    }
};

inline FrtSpace make_frt_space(const ModRing& ring, u32 n) {
    if (!is_prime(n)) throw std::invalid_argument("FrtSpace: N must be prime");
    if (ring.length != n) throw std::invalid_argument("FrtSpace: ring length mismatch");
    FrtSpace s;
    s.ring = ring;
    s.n = n;
    s.rows.assign(n + 1, std::vector<u32>(n, 0));
    s.known.assign(n + 1, false);
    return s;
}

/// All N+1 projections of the grid. Row m holds proj(t) = sum_x
/// img(x, m*x + t); the last row holds the row sums.
inline FrtSpace frt_forward(const ImageGrid& img) {
    const u32 n = img.n;
    FrtSpace out = make_frt_space(img.ring, n);
    std::vector<u64> acc(n);
    for (u32 m = 0; m < n; ++m) {
        acc.assign(n, 0);
        for (u32 x = 0; x < n; ++x) {
            const u32* src = &img.v[std::size_t(x) * n];
            u32 y = u32(u64(m) * x % n);
            for (u32 t = 0; t < n; ++t) {
                acc[t] += src[y];
                if (++y == n) y = 0;
            }
        }
        for (u32 t = 0; t < n; ++t) out.rows[m][t] = img.ring.reduce(acc[t]);
        out.known[m] = true;
    }
    for (u32 x = 0; x < n; ++x) {
        u64 sum = 0;
        for (u32 y = 0; y < n; ++y) sum += img.at(x, y);
        out.rows[n][x] = img.ring.reduce(sum);
    }
    out.known[n] = true;
    return out;
}

/// Transform-space cell occupied by sample w of a slice: w*(-m, 1) for
/// slope m, w*(1, 0) for the perpendicular slice. Sample 0 of every slice
/// lands on the shared DC cell (0, 0).
inline std::pair<u32, u32> slice_coords(Angle a, u32 w, u32 n) {
    if (a.is_perp()) return {w % n, 0};
    const u32 u = u32((u64(n) - u64(a.m) * w % n) % n);
    return {u, w % n};
}

/// Writes one transformed projection along its slice direction.
inline void place_slice(std::vector<u32>& grid, Angle a, const std::vector<u32>& slice, u32 n) {
    if (slice.size() != n) throw std::invalid_argument("place_slice: slice length must be N");
    if (grid.size() != std::size_t(n) * n)
        throw std::invalid_argument("place_slice: grid size mismatch");
    for (u32 w = 0; w < n; ++w) {
        const auto [u, v] = slice_coords(a, w, n);
        grid[std::size_t(u) * n + v] = slice[w];
    }
}

inline std::vector<Angle> all_angles(u32 n) {
    std::vector<Angle> out;
    out.reserve(n + 1);
    for (u32 m = 0; m < n; ++m) out.push_back(Angle::slope(m));
    out.push_back(Angle::perp());
    return out;
}

namespace detail {

// Two passes of 1D inverse transforms: columns-as-frequencies first, rows
// second. Input is a transform grid T(u, v) stored like an image.
inline ImageGrid inverse_2d(const ModRing& ring, u32 n, std::vector<u32> grid,
                            const NttEngine& engine) {
    std::vector<u32> line(n);
    for (u32 u = 0; u < n; ++u) {
        const std::size_t base = std::size_t(u) * n;
        for (u32 v = 0; v < n; ++v) line[v] = grid[base + v];
        const std::vector<u32> out = engine.inverse(line);
        for (u32 y = 0; y < n; ++y) grid[base + y] = out[y];
    }
    ImageGrid img = make_grid(ring, n, n, n);
    for (u32 y = 0; y < n; ++y) {
        for (u32 u = 0; u < n; ++u) line[u] = grid[std::size_t(u) * n + y];
        const std::vector<u32> out = engine.inverse(line);
        for (u32 x = 0; x < n; ++x) img.at(x, y) = out[x];
    }
    return img;
}

inline ImageGrid reconstruct_from_rows(const FrtSpace& proj, bool require_all) {
    const u32 n = proj.n;
    const NttEngine engine(proj.ring);
    std::vector<u32> grid(std::size_t(n) * n, 0);
    bool have_dc = false;
    for (Angle a : all_angles(n)) {
        if (!proj.is_known(a)) {
            if (require_all)
                throw std::invalid_argument("frt_inverse: missing projection row; use cbp_partial");
            continue;
        }
        std::vector<u32> slice = engine.forward(proj.row(a));
        for (u32 w = 1; w < n; ++w) {
            const auto [u, v] = slice_coords(a, w, n);
            grid[std::size_t(u) * n + v] = slice[w];
        }
        if (!have_dc) {
            grid[0] = slice[0];  // image total, identical for every known row
            have_dc = true;
        }
    }
    if (!have_dc) throw std::invalid_argument("cbp_partial: needs at least one known row");
    return detail::inverse_2d(proj.ring, n, std::move(grid), engine);
}

}  // namespace detail

/// Exact inversion from all N+1 projections.
inline ImageGrid frt_inverse(const FrtSpace& proj) {
    return detail::reconstruct_from_rows(proj, true);
}

/// Circulant back-projection of the known rows only; missing slices stay
/// zero, so the output is the image plus its superposed Ghosts.
inline ImageGrid cbp_partial(const FrtSpace& proj) {
    return detail::reconstruct_from_rows(proj, false);
}

/// Embeds a pixel image into the top-left corner of an N x N grid; the
/// remaining rows are the redundant region the de-ghosting relies on.
inline ImageGrid embed_image(const ModRing& ring, u32 n, const PixelImage& src) {
    if (src.rows > n || src.cols > n)
        throw std::invalid_argument("embed_image: image larger than grid");
    ImageGrid g = make_grid(ring, n, src.rows, src.cols);
    for (u32 r = 0; r < src.rows; ++r) {
        for (u32 c = 0; c < src.cols; ++c) g.at(r, c) = ring.reduce_signed(src.at(r, c));
    }
    return g;
}

/// Reads back an embedded region as plain integers.
inline PixelImage extract_image(const ImageGrid& img, u32 rows, u32 cols) {
    if (rows > img.n || cols > img.n)
        throw std::invalid_argument("extract_image: region larger than grid");
    PixelImage out = make_pixel_image(rows, cols);
    for (u32 r = 0; r < rows; ++r) {
        for (u32 c = 0; c < cols; ++c) out.at(r, c) = img.at(r, c);
    }
    return out;
}

/// Forward 2D transform, T(u, v) = sum img(x, y) * alpha^(u*x + v*y).
inline std::vector<u32> ntt_2d_forward(const ImageGrid& img, const NttEngine& engine) {
    const u32 n = img.n;
    std::vector<u32> grid(img.v);
    std::vector<u32> line(n);
    for (u32 x = 0; x < n; ++x) {
        const std::size_t base = std::size_t(x) * n;
        std::vector<u32> row(grid.begin() + base, grid.begin() + base + n);
        const std::vector<u32> out = engine.forward(row);
        for (u32 v = 0; v < n; ++v) grid[base + v] = out[v];
    }
    for (u32 v = 0; v < n; ++v) {
        for (u32 x = 0; x < n; ++x) line[x] = grid[std::size_t(x) * n + v];
        const std::vector<u32> out = engine.forward(line);
        for (u32 u = 0; u < n; ++u) grid[std::size_t(u) * n + v] = out[u];
    }
    return grid;
}

inline ImageGrid ntt_2d_inverse(const ModRing& ring, u32 n, std::vector<u32> grid,
                                const NttEngine& engine) {
    return detail::inverse_2d(ring, n, std::move(grid), engine);
}

}  // namespace nrtkit
