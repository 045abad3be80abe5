#include "nrtkit/frt.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "oracles.hpp"

using namespace nrtkit;

namespace {

ModRing pipeline_ring(u32 n) { return select_modulus(n, 256); }

}  // namespace

TEST(FrtForward, DeltaImageGivesDeltaRows) {
    const ModRing ring = pipeline_ring(7);
    ImageGrid img = make_grid(ring, 7, 7, 7);
    img.at(0, 0) = 5;
    const FrtSpace proj = frt_forward(img);
    for (Angle a : all_angles(7)) {
        EXPECT_EQ(proj.row(a)[0], 5u);
        for (u32 t = 1; t < 7; ++t) EXPECT_EQ(proj.row(a)[t], 0u);
    }
}

TEST(FrtForward, ConstantImageGivesConstantRows) {
    const ModRing ring = pipeline_ring(5);
    ImageGrid img = make_grid(ring, 5, 5, 5);
    for (u32& v : img.v) v = 3;
    const FrtSpace proj = frt_forward(img);
    for (Angle a : all_angles(5)) {
        for (u32 t = 0; t < 5; ++t) EXPECT_EQ(proj.row(a)[t], 15u);
    }
}

TEST(FrtForward, MatchesPixelwiseOracleAndConservesMass) {
    const ModRing ring = pipeline_ring(7);
    std::mt19937 rng(101);
    const ImageGrid img = oracles::random_grid(rng, ring, 7);
    u64 total = 0;
    for (u32 v : img.v) total += v;
    const FrtSpace proj = frt_forward(img);
    for (u32 m = 0; m < 7; ++m) {
        const std::vector<u64> expected = oracles::slow_projection(img, m);
        u64 row_total = 0;
        for (u32 t = 0; t < 7; ++t) {
            EXPECT_EQ(proj.rows[m][t], expected[t] % ring.modulus);
            row_total += expected[t];
        }
        EXPECT_EQ(row_total % ring.modulus, total % ring.modulus);
    }
    u64 perp_total = 0;
    for (u32 v : proj.row(Angle::perp())) perp_total += v;
    EXPECT_EQ(perp_total % ring.modulus, total % ring.modulus);
}

TEST(SlicePlacement, SlopeZeroRunsAlongTheFirstGridRow) {
    for (u32 w = 0; w < 5; ++w) {
        EXPECT_EQ(slice_coords(Angle::slope(0), w, 5), std::make_pair(0u, w));
    }
}

TEST(SlicePlacement, DcIsSharedByEverySlice) {
    for (Angle a : all_angles(11)) {
        EXPECT_EQ(slice_coords(a, 0, 11), std::make_pair(0u, 0u));
    }
}

TEST(SlicePlacement, PerpRunsAlongTheFirstColumn) {
    for (u32 w = 0; w < 5; ++w) {
        EXPECT_EQ(slice_coords(Angle::perp(), w, 5), std::make_pair(w, 0u));
    }
}

TEST(SlicePlacement, TilingCoversEveryNonDcCellOnce) {
    for (u32 n : {2u, 7u, 31u}) {
        std::vector<u32> hits(std::size_t(n) * n, 0);
        for (Angle a : all_angles(n)) {
            for (u32 w = 1; w < n; ++w) {
                const auto [u, v] = slice_coords(a, w, n);
                ++hits[std::size_t(u) * n + v];
            }
        }
        EXPECT_EQ(hits[0], 0u) << "n=" << n;
        for (std::size_t i = 1; i < hits.size(); ++i) EXPECT_EQ(hits[i], 1u) << "n=" << n;
    }
}

TEST(SlicePlacement, RejectsWrongLength) {
    std::vector<u32> grid(25, 0);
    EXPECT_THROW(place_slice(grid, Angle::slope(1), std::vector<u32>(4, 0), 5),
                 std::invalid_argument);
}

TEST(FrtInverse, RoundTripIsExact) {
    std::mt19937 rng(202);
    for (u32 n : {5u, 7u, 11u, 13u}) {
        const ModRing ring = pipeline_ring(n);
        for (int it = 0; it < 5; ++it) {
            const ImageGrid img = oracles::random_grid(rng, ring, n);
            const ImageGrid back = frt_inverse(frt_forward(img));
            EXPECT_EQ(back.v, img.v) << "n=" << n;
        }
    }
}

TEST(FrtInverse, ZeroProjectionsGiveZeroImage) {
    const ModRing ring = pipeline_ring(5);
    const ImageGrid img = make_grid(ring, 5, 5, 5);
    const ImageGrid back = frt_inverse(frt_forward(img));
    for (u32 v : back.v) EXPECT_EQ(v, 0u);
}

TEST(FrtInverse, SignalsMissingRow) {
    const ModRing ring = pipeline_ring(5);
    ImageGrid img = make_grid(ring, 5, 5, 5);
    FrtSpace proj = frt_forward(img);
    proj.known[2] = false;
    EXPECT_THROW(frt_inverse(proj), std::invalid_argument);
}

TEST(CbpPartial, AllRowsKnownEqualsFullInverse) {
    const ModRing ring = pipeline_ring(7);
    std::mt19937 rng(7001);
    const ImageGrid img = oracles::random_grid(rng, ring, 7);
    const FrtSpace proj = frt_forward(img);
    EXPECT_EQ(cbp_partial(proj).v, frt_inverse(proj).v);
}

TEST(CbpPartial, SingleKnownRowIsItsScaledCirculant) {
    const u32 n = 7;
    const ModRing ring = pipeline_ring(n);
    std::mt19937 rng(7002);
    const ImageGrid img = oracles::random_grid(rng, ring, n);
    FrtSpace proj = frt_forward(img);
    const u32 kept = 3;
    for (u32 row = 0; row <= n; ++row) proj.known[row] = row == kept;
    const ImageGrid out = cbp_partial(proj);
    const u32 n_inv = ring.inv(n % ring.modulus);
    for (u32 x = 0; x < n; ++x) {
        for (u32 y = 0; y < n; ++y) {
            const u32 t = u32((y + u64(n - kept) * x) % n);  // t = y - kept*x
            EXPECT_EQ(out.at(x, y), ring.mul(n_inv, proj.rows[kept][t]));
        }
    }
}

TEST(CbpPartial, MissingRowResidualIsTheNegatedProjectionCirculant) {
    // One missing slope g: output - image = -(1/N) * C + (1/N^2) * total,
    // where C(x, y) = missing_projection((y - g*x) mod N).
    const u32 n = 7;
    const ModRing ring = pipeline_ring(n);
    std::mt19937 rng(7003);
    const ImageGrid img = oracles::random_grid(rng, ring, n);
    FrtSpace proj = frt_forward(img);
    const u32 g = 4;
    proj.known[g] = false;
    const ImageGrid out = cbp_partial(proj);

    u64 total = 0;
    for (u32 v : img.v) total += v;
    const u32 total_m = ring.reduce(total);
    const u32 n_inv = ring.inv(n % ring.modulus);
    const u32 dc_term = ring.mul(ring.mul(n_inv, n_inv), total_m);
    for (u32 x = 0; x < n; ++x) {
        for (u32 y = 0; y < n; ++y) {
            const u32 t = u32((y + u64(n - g) * x) % n);
            const u32 circulant = proj.rows[g][t];  // forward row still holds the data
            const u32 expected = ring.sub(dc_term, ring.mul(n_inv, circulant));
            EXPECT_EQ(ring.sub(out.at(x, y), img.at(x, y)), expected);
        }
    }
}

TEST(CbpPartial, NeedsAtLeastOneKnownRow) {
    const ModRing ring = pipeline_ring(5);
    FrtSpace proj = make_frt_space(ring, 5);
    EXPECT_THROW(cbp_partial(proj), std::invalid_argument);
}

TEST(Circulants, LineSetTransformLivesOnItsSliceOnly) {
    const u32 n = 11;
    const ModRing ring = pipeline_ring(n);
    std::mt19937 rng(7004);
    const std::vector<u32> row = oracles::random_residues(rng, n, ring.modulus);
    for (u32 m : {0u, 1u, 4u}) {
        ImageGrid circ = make_grid(ring, n, n, n);
        for (u32 x = 0; x < n; ++x) {
            for (u32 y = 0; y < n; ++y) {
                circ.at(x, y) = row[u32((y + u64(n - m) * x) % n)];
            }
        }
        const NttEngine engine(ring);
        const std::vector<u32> t = ntt_2d_forward(circ, engine);
        std::set<std::pair<u32, u32>> slice_cells;
        for (u32 w = 0; w < n; ++w) slice_cells.insert(slice_coords(Angle::slope(m), w, n));
        for (u32 u = 0; u < n; ++u) {
            for (u32 v = 0; v < n; ++v) {
                if (!slice_cells.count({u, v})) {
                    EXPECT_EQ(t[std::size_t(u) * n + v], 0u) << "m=" << m;
                }
            }
        }
    }
}

TEST(Ntt2d, ForwardInverseRoundTrip) {
    const u32 n = 13;
    const ModRing ring = pipeline_ring(n);
    std::mt19937 rng(7005);
    const ImageGrid img = oracles::random_grid(rng, ring, n);
    const NttEngine engine(ring);
    const ImageGrid back = ntt_2d_inverse(ring, n, ntt_2d_forward(img, engine), engine);
    EXPECT_EQ(back.v, img.v);
}

TEST(Embedding, EmbedExtractRoundTrip) {
    const ModRing ring = pipeline_ring(7);
    std::mt19937 rng(7006);
    const PixelImage src = oracles::random_pixels(rng, 3, 4);
    const ImageGrid g = embed_image(ring, 7, src);
    EXPECT_EQ(g.rows, 3u);
    EXPECT_EQ(g.cols, 4u);
    for (u32 x = 3; x < 7; ++x) {
        for (u32 y = 0; y < 7; ++y) EXPECT_EQ(g.at(x, y), 0u);
    }
    EXPECT_EQ(extract_image(g, 3, 4).v, src.v);
    EXPECT_THROW(embed_image(ring, 7, oracles::random_pixels(rng, 8, 2)), std::invalid_argument);
}
