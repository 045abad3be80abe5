#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "nrtkit/frt.hpp"
#include "nrtkit/ghost.hpp"
#include "nrtkit/modring.hpp"
#include "nrtkit/ntt.hpp"
#include "nrtkit/pixel_image.hpp"

namespace nrtkit {

/// Mirrored angle set used for de-convolution: slope m maps to N - m so
/// the deconvolution Ghost undoes the right shift of each circulant; the
/// perpendicular direction is its own mirror.
inline GhostSpec reverse_spec(const GhostSpec& spec) {
    std::vector<Angle> reversed;
    reversed.reserve(spec.missing.size());
    for (Angle a : spec.missing) {
        reversed.push_back(a.is_perp() ? a : Angle::slope((spec.n - a.m) % spec.n));
    }
    return make_ghost_spec(spec.ring, spec.n, std::move(reversed));
}

/// Everything the row-wise de-ghosting needs: the deconvolution Ghost
/// (row 0 a delta at the origin, which makes the back-substitution
/// well-posed) and the eigenvalues of its |missing|+1 rows.
struct DeghostPlan {
    GhostSpec spec;
    u32 q_rows = 0;  // image rows to recover
    ImageGrid deconv_ghost;
    std::vector<std::vector<u32>> row_eigen;  // |missing|+1 transformed rows
};

/// Builds the deconvolution Ghost from the mirrored angles and transforms
/// its rows once. Requires Q + |missing| <= N so the Ghost tail stays
/// inside the redundant rows, and a known perpendicular projection so
/// row 0 of the Ghost is a unit delta.
inline DeghostPlan build_deconv_ghost(const GhostSpec& spec, u32 q_rows) {
    const u32 n = spec.n;
    const u32 ghosts = spec.ghost_count();
    if (q_rows == 0 || q_rows > n) throw std::invalid_argument("deghost: invalid row count");
    if (q_rows + ghosts > n)
        throw std::invalid_argument("deghost: insufficient redundancy, need Q + missing <= N");
    for (Angle a : spec.missing) {
        if (a.is_perp())
            throw std::invalid_argument(
                "deghost: the perpendicular projection must be known for row-wise recovery");
    }

    DeghostPlan plan{spec, q_rows, build_ghost_1d(reverse_spec(spec)), {}};
    for (u32 y = 0; y < n; ++y) {
        if (plan.deconv_ghost.at(0, y) != (y == 0 ? 1u : 0u))
            throw std::logic_error("deghost: deconvolution Ghost row 0 is not a delta");
    }

    const NttEngine engine(spec.ring);
    std::vector<u32> row(n);
    plan.row_eigen.reserve(ghosts + 1);
    for (u32 s = 0; s <= ghosts; ++s) {
        for (u32 y = 0; y < n; ++y) row[y] = plan.deconv_ghost.at(s, y);
        plan.row_eigen.push_back(engine.forward(row));
    }
    return plan;
}

/// Removes the Ghosts from a partial (CBP) reconstruction. Rows are
/// recovered bottom-up: the sub-circulant sum of the Ghost rows against
/// the rows below the target is evaluated in the eigenvalue domain, the
/// recovered row is inverse-transformed, and its eigenvalues are
/// subtracted from the stored row so it acts as a redundant row for the
/// remaining steps. Rows 0..Q-1 of the result are exact residues.
inline ImageGrid deghost_rows(const ImageGrid& ghosted, const DeghostPlan& plan) {
    const u32 n = plan.spec.n;
    if (ghosted.n != n || ghosted.ring.modulus != plan.spec.ring.modulus)
        throw std::invalid_argument("deghost_rows: image does not match plan");
    const u32 ghosts = plan.spec.ghost_count();
    const NttEngine engine(plan.spec.ring);
    const ModRing& ring = plan.spec.ring;

    std::vector<std::vector<u32>> spectra(n);
    std::vector<u32> line(n);
    for (u32 x = 0; x < n; ++x) {
        for (u32 y = 0; y < n; ++y) line[y] = ghosted.at(x, y);
        spectra[x] = engine.forward(line);
    }

    ImageGrid out = make_grid(ring, n, plan.q_rows, ghosted.cols ? ghosted.cols : n);
    std::vector<u32> acc(n);
    for (u32 r = plan.q_rows; r-- > 0;) {
        std::fill(acc.begin(), acc.end(), 0u);
        for (u32 s = 0; s <= ghosts; ++s) {
            const std::vector<u32>& eig = plan.row_eigen[s];
            const std::vector<u32>& src = spectra[(r + s) % n];
            for (u32 u = 0; u < n; ++u) acc[u] = ring.add(acc[u], ring.mul(eig[u], src[u]));
        }
        const std::vector<u32> recovered = engine.inverse(acc);
        for (u32 y = 0; y < n; ++y) out.at(r, y) = recovered[y];
        for (u32 u = 0; u < n; ++u) spectra[r][u] = ring.sub(spectra[r][u], acc[u]);
    }
    return out;
}

/// Convenience overload that checks the projection mask against the plan
/// before back-projecting and de-ghosting.
inline ImageGrid deghost_rows(const FrtSpace& partial, const DeghostPlan& plan) {
    for (Angle a : all_angles(partial.n)) {
        const bool missing = std::find(plan.spec.missing.begin(), plan.spec.missing.end(), a) !=
                             plan.spec.missing.end();
        if (partial.is_known(a) == missing)
            throw std::invalid_argument("deghost_rows: projection mask does not match plan");
    }
    return deghost_rows(cbp_partial(partial), plan);
}

/// Identity lift from residues to pixel values. A residue above the
/// alphabet bound means the projections were inconsistent.
inline PixelImage lift_residues(const ImageGrid& img, u32 alphabet_max) {
    if (img.ring.modulus <= alphabet_max)
        throw std::invalid_argument("lift_residues: modulus must exceed the alphabet");
    PixelImage out = make_pixel_image(img.rows, img.cols);
    for (u32 r = 0; r < img.rows; ++r) {
        for (u32 c = 0; c < img.cols; ++c) {
            const u32 v = img.at(r, c);
            if (v > alphabet_max)
                throw std::domain_error("lift_residues: residue exceeds pixel alphabet");
            out.at(r, c) = v;
        }
    }
    return out;
}

}  // namespace nrtkit
