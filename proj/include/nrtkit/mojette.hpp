#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "nrtkit/frt.hpp"
#include "nrtkit/modring.hpp"
#include "nrtkit/pixel_image.hpp"

namespace nrtkit {

/// Coprime projection direction (q, p): q steps along rows, p along
/// columns. Canonical sign is q > 0, with the vertical direction kept as
/// (0, 1).
struct RationalAngle {
    i64 p = 0;
    i64 q = 0;

    constexpr bool operator==(const RationalAngle&) const = default;
};

inline RationalAngle rational_angle(i64 p, i64 q) {
    if (p == 0 && q == 0) throw std::invalid_argument("RationalAngle: zero vector");
    if (std::gcd(std::abs(p), std::abs(q)) > 1)
        throw std::invalid_argument("RationalAngle: p and q must be coprime");
    if (q < 0 || (q == 0 && p < 0)) { p = -p; q = -q; }
    return RationalAngle{p, q};
}

/// Aperiodic projection of a Q x P image: pixel (x, y) falls in bin
/// b = p*x - q*y, stored from bin_offset upward.
struct MojetteProjection {
    RationalAngle angle;
    i64 bin_offset = 0;
    std::vector<i64> bins;
};

inline u32 mojette_bin_count(const RationalAngle& a, u32 rows, u32 cols) {
    return u32(std::abs(a.p) * i64(rows - 1) + std::abs(a.q) * i64(cols - 1) + 1);
}

inline MojetteProjection mojette_project(const PixelImage& img, const RationalAngle& a) {
    MojetteProjection proj;
    proj.angle = a;
    const i64 min_p = a.p >= 0 ? 0 : a.p * i64(img.rows - 1);
    const i64 max_q = a.q >= 0 ? a.q * i64(img.cols - 1) : 0;
    proj.bin_offset = min_p - max_q;
    proj.bins.assign(mojette_bin_count(a, img.rows, img.cols), 0);
    for (u32 x = 0; x < img.rows; ++x) {
        for (u32 y = 0; y < img.cols; ++y) {
            const i64 b = a.p * i64(x) - a.q * i64(y);
            proj.bins[std::size_t(b - proj.bin_offset)] += img.at(x, y);
        }
    }
    return proj;
}

/// Reconstructability bound for an N-wide image from a rational angle set:
/// N <= 1 + max(sum |p|, sum |q|).
inline bool katz_check(const std::vector<RationalAngle>& angles, u64 n) {
    if (angles.empty()) throw std::invalid_argument("katz_check: empty angle set");
    u64 sum_p = 0, sum_q = 0;
    for (const RationalAngle& a : angles) {
        sum_p += u64(std::abs(a.p));
        sum_q += u64(std::abs(a.q));
    }
    return n <= 1 + std::max(sum_p, sum_q);
}

/// Finite angle the rational direction collapses to in an N x N grid:
/// m = p * q^-1 (mod N), or the perpendicular projection when N | q.
inline Angle map_angle_to_frt(const RationalAngle& a, u32 n) {
    if (!is_prime(n)) throw std::invalid_argument("map_angle_to_frt: N must be prime");
    const u32 q = u32(((a.q % i64(n)) + i64(n)) % i64(n));
    if (q == 0) return Angle::perp();
    const u32 p = u32(((a.p % i64(n)) + i64(n)) % i64(n));
    return Angle::slope(u32(u64(p) * mod_inverse(q, n) % n));
}

/// Wraps an aperiodic projection onto the length-N cyclic row of its
/// mapped finite angle: bin b lands at translate -q^-1 * b (mod N), or
/// p^-1 * b for the perpendicular case. The result equals the forward
/// transform row of the zero-padded embedded image.
inline std::pair<Angle, std::vector<u32>> mojette_to_frt_row(const MojetteProjection& proj, u32 n,
                                                             const ModRing& ring) {
    const Angle angle = map_angle_to_frt(proj.angle, n);
    u32 factor;  // translate multiplier applied to each bin index
    if (angle.is_perp()) {
        const u32 p = u32(((proj.angle.p % i64(n)) + i64(n)) % i64(n));
        factor = u32(mod_inverse(p, n));
    } else {
        const u32 q = u32(((proj.angle.q % i64(n)) + i64(n)) % i64(n));
        factor = u32(n - mod_inverse(q, n));
    }
    std::vector<u32> row(n, 0);
    for (std::size_t i = 0; i < proj.bins.size(); ++i) {
        const i64 b = proj.bin_offset + i64(i);
        const u32 bm = u32(((b % i64(n)) + i64(n)) % i64(n));
        const u32 t = u32(u64(factor) * bm % n);
        row[t] = ring.add(row[t], ring.reduce_signed(proj.bins[i]));
    }
    return {angle, std::move(row)};
}

enum class Coverage { octant1, quadrant, halfplane };

inline bool in_coverage(Coverage c, const RationalAngle& a) {
    switch (c) {
        case Coverage::octant1: return a.p >= 0 && a.q >= a.p;
        case Coverage::quadrant: return a.p >= 0;
        case Coverage::halfplane: return true;
    }
    return false;
}

namespace detail {

// Canonical coprime vectors of weight |p| + |q| = s, ordered by |q|
// ascending with positive p before negative.
inline std::vector<RationalAngle> vectors_of_weight(u32 s) {
    std::vector<RationalAngle> out;
    if (s == 0) return out;
    for (i64 q = 0; q <= i64(s); ++q) {
        const i64 p = i64(s) - q;
        if (q == 0 && p != 1) continue;
        if (std::gcd(p, q) != 1) continue;
        out.push_back(RationalAngle{p, q});
        if (p > 0 && q > 0) out.push_back(RationalAngle{-p, q});
    }
    return out;
}

}  // namespace detail

/// Deterministic limited-angle set: canonical coprime vectors enumerated
/// by increasing |p| + |q| (then |q|, then sign), keeping the first vector
/// for each distinct finite angle until `count` angles are covered.
inline std::vector<RationalAngle> generate_angle_set(u32 count, Coverage coverage, u32 q_rows,
                                                     u32 p_cols, u32 n) {
    if (!is_prime(n)) throw std::invalid_argument("generate_angle_set: N must be prime");
    if (count == 0 || count > n + 1)
        throw std::invalid_argument("generate_angle_set: count must be in [1, N+1]");
    if (q_rows > n || p_cols > n)
        throw std::invalid_argument("generate_angle_set: image exceeds grid");
    std::vector<RationalAngle> selected;
    std::vector<bool> taken(n + 1, false);
    const u32 weight_cap = 4 * n + 4;
    for (u32 s = 1; s <= weight_cap && selected.size() < count; ++s) {
        for (const RationalAngle& a : detail::vectors_of_weight(s)) {
            if (!in_coverage(coverage, a)) continue;
            const u32 row = angle_row(map_angle_to_frt(a, n), n);
            if (taken[row]) continue;
            taken[row] = true;
            selected.push_back(a);
            if (selected.size() == count) break;
        }
    }
    if (selected.size() < count)
        throw std::runtime_error("generate_angle_set: coverage cannot supply enough angles");
    return selected;
}

/// How many coprime vectors with max(|p|, |q|) <= bound inside the
/// coverage map onto each finite angle. Index N of the histogram is the
/// perpendicular projection.
inline std::vector<u64> mapping_multiplicity(u32 n, Coverage coverage, u32 bound) {
    if (!is_prime(n)) throw std::invalid_argument("mapping_multiplicity: N must be prime");
    if (bound < 1) throw std::invalid_argument("mapping_multiplicity: bound must be positive");
    std::vector<u64> histogram(n + 1, 0);
    for (i64 q = 0; q <= i64(bound); ++q) {
        for (i64 p = -i64(bound); p <= i64(bound); ++p) {
            if (p == 0 && q == 0) continue;
            if (q == 0 && p != 1) continue;
            if (std::gcd(std::abs(p), q) != 1) continue;
            const RationalAngle a{p, q};
            if (!in_coverage(coverage, a)) continue;
            ++histogram[angle_row(map_angle_to_frt(a, n), n)];
        }
    }
    return histogram;
}

/// Assembles the partial projection space of a mojette set; every mapped
/// angle must be distinct.
inline FrtSpace build_frt_space(const std::vector<MojetteProjection>& projections, u32 n,
                                const ModRing& ring) {
    FrtSpace space = make_frt_space(ring, n);
    for (const MojetteProjection& proj : projections) {
        auto [angle, row] = mojette_to_frt_row(proj, n, ring);
        if (space.is_known(angle))
            throw std::invalid_argument("build_frt_space: two projections map to one finite angle");
        space.set_row(angle, std::move(row));
    }
    return space;
}

}  // namespace nrtkit
