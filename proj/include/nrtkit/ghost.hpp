#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "nrtkit/frt.hpp"
#include "nrtkit/modring.hpp"
#include "nrtkit/ntt.hpp"

namespace nrtkit {

/// The set of missing projection angles a Ghost is invisible at.
struct GhostSpec {
    ModRing ring;
    u32 n = 0;
    std::vector<Angle> missing;

    u32 ghost_count() const { return u32(missing.size()); }

    std::vector<Angle> known() const {
        std::vector<Angle> out;
        for (Angle a : all_angles(n)) {
            if (std::find(missing.begin(), missing.end(), a) == missing.end()) out.push_back(a);
        }
        return out;
    }
};

inline GhostSpec make_ghost_spec(const ModRing& ring, u32 n, std::vector<Angle> missing) {
    if (!is_prime(n)) throw std::invalid_argument("GhostSpec: N must be prime");
    if (ring.length != n) throw std::invalid_argument("GhostSpec: ring length mismatch");
    if (missing.empty()) throw std::invalid_argument("GhostSpec: missing set must be nonempty");
    if (missing.size() > std::size_t(n) + 1)
        throw std::invalid_argument("GhostSpec: more angles than projections");
    for (Angle a : missing) {
        if (!a.is_perp() && a.m >= n) throw std::invalid_argument("GhostSpec: angle out of range");
        if (std::count(missing.begin(), missing.end(), a) != 1)
            throw std::invalid_argument("GhostSpec: duplicate missing angle");
    }
    return GhostSpec{ring, n, std::move(missing)};
}

/// Translate of the -1 term when the kernel of missing angle g is
/// projected at angle j: (g - j) mod N between slopes, 1 whenever exactly
/// one of the two is the perpendicular direction.
inline u32 kernel_translate(Angle g, Angle j, u32 n) {
    if (g.is_perp() && j.is_perp()) return 0;
    if (g.is_perp() || j.is_perp()) return 1;
    return (g.m + n - j.m) % n;
}

/// Eigenvalues of the N distinct 1D Ghost operators: row d holds
/// L_d(u) = 1 - alpha^(d*u), the transform of the two-entry projection
/// (+1 at translate 0, -1 at translate d). Row 0 is identically zero and
/// every row vanishes at u = 0.
struct OperatorTable {
    u32 n = 0;
    std::vector<u32> values;  // n * n, row d, column u

    u32 at(u32 d, u32 u) const { return values[std::size_t(d) * n + u]; }
};

inline OperatorTable operator_table(const ModRing& ring) {
    const u32 n = ring.length;
    std::vector<u32> alpha_pow(n);
    alpha_pow[0] = 1;
    for (u32 i = 1; i < n; ++i) alpha_pow[i] = ring.mul(alpha_pow[i - 1], ring.root);
    OperatorTable table;
    table.n = n;
    table.values.resize(std::size_t(n) * n);
    for (u32 d = 0; d < n; ++d) {
        for (u32 u = 0; u < n; ++u)
            table.values[std::size_t(d) * n + u] = ring.sub(1, alpha_pow[u64(d) * u % n]);
    }
    return table;
}

inline OperatorTable build_operator_table(const GhostSpec& spec) {
    return operator_table(spec.ring);
}

/// The two-point kernel of one angle as an N x N image: +1 at the origin
/// and -1 one step along the projection direction.
inline ImageGrid kernel_image(const ModRing& ring, u32 n, Angle a) {
    ImageGrid img = make_grid(ring, n, n, n);
    img.at(0, 0) = 1;
    if (a.is_perp())
        img.at(0, 1 % n) = ring.neg(1);
    else
        img.at(1 % n, a.m) = ring.neg(1);
    return img;
}

/// Fast Ghost construction: per known projection, the slice is the product
/// of the operator rows selected by the kernel translates, applied to a
/// delta image whose slices are all ones. Missing slices stay zero and the
/// inverse transform returns the Ghost, supported on rows 0..|missing|.
inline ImageGrid build_ghost_1d(const GhostSpec& spec) {
    const u32 n = spec.n;
    const ModRing& ring = spec.ring;
    const NttEngine engine(ring);
    const OperatorTable table = operator_table(ring);
    std::vector<u32> grid(std::size_t(n) * n, 0);
    std::vector<u32> slice(n);
    for (Angle j : spec.known()) {
        std::fill(slice.begin(), slice.end(), 1u);
        for (Angle g : spec.missing) {
            const u32 d = kernel_translate(g, j, n);
            const u32* op = &table.values[std::size_t(d) * n];
            for (u32 u = 0; u < n; ++u) slice[u] = ring.mul(slice[u], op[u]);
        }
        place_slice(grid, j, slice, n);
    }
    return ntt_2d_inverse(ring, n, std::move(grid), engine);
}

/// Reference construction: full 2D transform-domain product of the kernel
/// images with a delta image.
inline ImageGrid build_ghost_2d_oracle(const GhostSpec& spec) {
    const u32 n = spec.n;
    const ModRing& ring = spec.ring;
    const NttEngine engine(ring);
    std::vector<u32> product(std::size_t(n) * n, 1);  // transform of the delta image
    for (Angle g : spec.missing) {
        const std::vector<u32> k = ntt_2d_forward(kernel_image(ring, n, g), engine);
        for (std::size_t i = 0; i < product.size(); ++i) product[i] = ring.mul(product[i], k[i]);
    }
    return ntt_2d_inverse(ring, n, std::move(product), engine);
}

/// True iff the Ghost's forward projections vanish at every missing angle.
inline bool ghost_zero_check(const ImageGrid& ghost, const GhostSpec& spec) {
    const FrtSpace proj = frt_forward(ghost);
    for (Angle g : spec.missing) {
        for (u32 v : proj.row(g)) {
            if (v != 0) return false;
        }
    }
    return true;
}

}  // namespace nrtkit
