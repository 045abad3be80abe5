#include "nrtkit/mojette.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "oracles.hpp"

using namespace nrtkit;

namespace {

// Distinct-bin enumeration, independent of the closed-form count.
u32 count_distinct_bins(const RationalAngle& a, u32 rows, u32 cols) {
    std::set<i64> bins;
    for (u32 x = 0; x < rows; ++x) {
        for (u32 y = 0; y < cols; ++y) bins.insert(a.p * i64(x) - a.q * i64(y));
    }
    return u32(bins.size());
}

}  // namespace

TEST(RationalAngle, CanonicalizesSign) {
    EXPECT_EQ(rational_angle(1, -1), rational_angle(-1, 1));
    EXPECT_EQ(rational_angle(-1, 0).q, 0);
    EXPECT_EQ(rational_angle(-1, 0).p, 1);
    EXPECT_THROW(rational_angle(0, 0), std::invalid_argument);
    EXPECT_THROW(rational_angle(2, 4), std::invalid_argument);
}

TEST(MojetteProject, SinglePixelSingleBin) {
    PixelImage img = make_pixel_image(1, 1);
    img.at(0, 0) = 9;
    for (const RationalAngle& a : {rational_angle(1, 1), rational_angle(-3, 2)}) {
        const MojetteProjection proj = mojette_project(img, a);
        EXPECT_EQ(proj.bins.size(), 1u);
        EXPECT_EQ(proj.bins[0], 9);
        EXPECT_EQ(proj.bin_offset, 0);
    }
}

TEST(MojetteProject, AxisProjectionGivesColumnSums) {
    std::mt19937 rng(601);
    const PixelImage img = oracles::random_pixels(rng, 3, 5);
    const MojetteProjection proj = mojette_project(img, rational_angle(0, 1));
    ASSERT_EQ(proj.bins.size(), 5u);  // P bins
    for (u32 y = 0; y < 5; ++y) {
        i64 expected = 0;
        for (u32 x = 0; x < 3; ++x) expected += img.at(x, y);
        // b = -y, bins run from the most negative offset upward.
        EXPECT_EQ(proj.bins[4 - y], expected);
    }
}

TEST(MojetteProject, ReferenceThreeAngleBinCounts) {
    std::mt19937 rng(602);
    const PixelImage img = oracles::random_pixels(rng, 4, 4);
    const u32 expected[3] = {7, 7, 10};
    const RationalAngle angles[3] = {rational_angle(1, 1), rational_angle(-1, 1),
                                     rational_angle(-2, 1)};
    for (int i = 0; i < 3; ++i) {
        const MojetteProjection proj = mojette_project(img, angles[i]);
        EXPECT_EQ(proj.bins.size(), expected[i]);
        EXPECT_EQ(count_distinct_bins(angles[i], 4, 4), expected[i]);
    }
}

TEST(MojetteProject, BinCountFormulaMatchesEnumeration) {
    // The formula sizes the contiguous bin array. Enumerated distinct bins
    // match it exactly once the image spans the direction vector; narrow
    // images leave zero-valued gap bins inside the range.
    std::mt19937 rng(603);
    for (int it = 0; it < 60; ++it) {
        const u32 rows = 1 + rng() % 7, cols = 1 + rng() % 7;
        i64 p = i64(rng() % 9) - 4, q = i64(rng() % 5);
        if (p == 0 && q == 0) p = 1;
        if (std::gcd(std::abs(p), q) != 1) continue;
        const RationalAngle a = rational_angle(p, q);
        const u32 formula = mojette_bin_count(a, rows, cols);
        const u32 enumerated = count_distinct_bins(a, rows, cols);
        // Computed range extent always matches the formula.
        i64 min_b = 0, max_b = 0;
        for (u32 x = 0; x < rows; ++x) {
            for (u32 y = 0; y < cols; ++y) {
                const i64 b = a.p * i64(x) - a.q * i64(y);
                min_b = std::min(min_b, b);
                max_b = std::max(max_b, b);
            }
        }
        EXPECT_EQ(formula, u32(max_b - min_b + 1));
        EXPECT_LE(enumerated, formula);
        if (std::min(std::abs(a.p), std::abs(a.q)) <= 1 && i64(rows) > std::abs(a.q) &&
            i64(cols) > std::abs(a.p)) {
            EXPECT_EQ(formula, enumerated)
                << "p=" << a.p << " q=" << a.q << " rows=" << rows << " cols=" << cols;
        }
    }
}

TEST(MojetteProject, MassConservation) {
    std::mt19937 rng(604);
    const PixelImage img = oracles::random_pixels(rng, 5, 3);
    i64 total = 0;
    for (i64 v : img.v) total += v;
    for (const RationalAngle& a :
         {rational_angle(1, 2), rational_angle(-3, 1), rational_angle(1, 0)}) {
        const MojetteProjection proj = mojette_project(img, a);
        i64 sum = 0;
        for (i64 b : proj.bins) sum += b;
        EXPECT_EQ(sum, total);
    }
}

TEST(KatzCheck, ThreeAngleSetPassesForWidthFour) {
    const std::vector<RationalAngle> set{rational_angle(1, 1), rational_angle(-1, 1),
                                         rational_angle(-2, 1)};
    EXPECT_TRUE(katz_check(set, 4));
    EXPECT_FALSE(katz_check(set, 6));
}

TEST(KatzCheck, SingleAngleFailsForN3) {
    EXPECT_FALSE(katz_check({rational_angle(1, 1)}, 3));
}

TEST(KatzCheck, TrivialSinglePixel) {
    EXPECT_TRUE(katz_check({rational_angle(2, 1)}, 1));
}

TEST(KatzCheck, MatchesBruteForceArithmetic) {
    std::mt19937 rng(605);
    for (int it = 0; it < 1000; ++it) {
        std::vector<RationalAngle> set;
        const u32 count = 1 + rng() % 6;
        for (u32 i = 0; i < count; ++i) {
            i64 p = i64(rng() % 11) - 5, q = i64(rng() % 6);
            if (p == 0 && q == 0) p = 1;
            const i64 g = std::gcd(std::abs(p), q);
            set.push_back(rational_angle(p / g, q / g));
        }
        const u64 n = 1 + rng() % 20;
        u64 sp = 0, sq = 0;
        for (const RationalAngle& a : set) {
            sp += u64(a.p < 0 ? -a.p : a.p);
            sq += u64(a.q < 0 ? -a.q : a.q);
        }
        const bool expected = n <= 1 + (sp > sq ? sp : sq);
        EXPECT_EQ(katz_check(set, n), expected);
    }
}

TEST(MapAngle, UnitInverse) {
    EXPECT_EQ(map_angle_to_frt(rational_angle(3, 1), 7), Angle::slope(3));
}

TEST(MapAngle, UsesModularInverse) {
    // q = 2, p = 1 at N = 5: 2^-1 = 3, so m = 3.
    EXPECT_EQ(map_angle_to_frt(rational_angle(1, 2), 5), Angle::slope(3));
}

TEST(MapAngle, VerticalMapsToPerp) {
    EXPECT_EQ(map_angle_to_frt(rational_angle(1, 0), 7), Angle::perp());
    EXPECT_EQ(map_angle_to_frt(rational_angle(2, 7), 7), Angle::perp());
}

TEST(Rebinning, SinglePixelGivesDeltaRow) {
    const ModRing ring = select_modulus(7, 300);
    PixelImage img = make_pixel_image(1, 1);
    img.at(0, 0) = 5;
    for (const RationalAngle& a :
         {rational_angle(1, 1), rational_angle(-2, 3), rational_angle(1, 0)}) {
        const auto [angle, row] = mojette_to_frt_row(mojette_project(img, a), 7, ring);
        EXPECT_EQ(row[0], 5u);
        for (u32 t = 1; t < 7; ++t) EXPECT_EQ(row[t], 0u);
    }
}

TEST(Rebinning, MatchesForwardTransformRow) {
    const ModRing ring = select_modulus(7, 300);
    std::mt19937 rng(606);
    const PixelImage pixels = oracles::random_pixels(rng, 3, 3);
    const FrtSpace proj = frt_forward(embed_image(ring, 7, pixels));
    const auto [angle, row] = mojette_to_frt_row(mojette_project(pixels, rational_angle(1, 1)), 7, ring);
    EXPECT_EQ(angle, Angle::slope(1));
    EXPECT_EQ(row, proj.row(angle));
}

TEST(Rebinning, MatchesForwardTransformRowWithInverseMapping) {
    const ModRing ring = select_modulus(13, 300);
    std::mt19937 rng(607);
    const PixelImage pixels = oracles::random_pixels(rng, 4, 4);
    const FrtSpace proj = frt_forward(embed_image(ring, 13, pixels));
    const auto [angle, row] = mojette_to_frt_row(mojette_project(pixels, rational_angle(1, 2)), 13, ring);
    EXPECT_EQ(angle, Angle::slope(7));  // 2^-1 = 7 mod 13
    EXPECT_EQ(row, proj.row(angle));
}

TEST(Rebinning, RandomInstancesMatchForwardRows) {
    std::mt19937 rng(608);
    const u32 sizes[] = {5, 7, 11, 13, 17, 23};
    for (int it = 0; it < 60; ++it) {
        const u32 n = sizes[rng() % 6];
        const ModRing ring = select_modulus(n, 300);
        const u32 rows = 1 + rng() % n, cols = 1 + rng() % n;
        const PixelImage pixels = oracles::random_pixels(rng, rows, cols);
        i64 p, q;
        do {
            p = i64(rng() % 13) - 6;
            q = it % 10 == 0 ? i64(n) : i64(rng() % 7);  // exercise the q = 0 mod N path
            if (p == 0 && q == 0) p = 1;
        } while (std::gcd(std::abs(p), std::abs(q)) != 1);
        const RationalAngle a = rational_angle(p, q);
        const FrtSpace proj = frt_forward(embed_image(ring, n, pixels));
        const auto [angle, row] = mojette_to_frt_row(mojette_project(pixels, a), n, ring);
        ASSERT_EQ(row, proj.row(angle)) << "n=" << n << " p=" << a.p << " q=" << a.q;
    }
}

TEST(GenerateAngleSet, FullHalfPlaneSetCoversEveryAngle) {
    const u32 n = 11;
    const std::vector<RationalAngle> set = generate_angle_set(n + 1, Coverage::halfplane, n, n, n);
    std::set<u32> mapped;
    for (const RationalAngle& a : set) mapped.insert(angle_row(map_angle_to_frt(a, n), n));
    EXPECT_EQ(mapped.size(), std::size_t(n) + 1);
}

TEST(GenerateAngleSet, QuadrantSetForElevenInTwentyThree) {
    // 12 projections for an 11x11 image in a 23x23 grid, quadrant only.
    const std::vector<RationalAngle> set = generate_angle_set(12, Coverage::quadrant, 11, 11, 23);
    EXPECT_EQ(set.size(), 12u);
    std::set<u32> mapped;
    for (const RationalAngle& a : set) {
        EXPECT_GE(a.p, 0);
        EXPECT_GE(a.q, 0);
        mapped.insert(angle_row(map_angle_to_frt(a, 23), 23));
    }
    EXPECT_EQ(mapped.size(), 12u);
}

TEST(GenerateAngleSet, HalfPlane101DistinctAnglesAt257) {
    const std::vector<RationalAngle> set =
        generate_angle_set(101, Coverage::halfplane, 100, 100, 257);
    std::set<u32> mapped;
    for (const RationalAngle& a : set) mapped.insert(angle_row(map_angle_to_frt(a, 257), 257));
    EXPECT_EQ(mapped.size(), 101u);
    // Q+1 angles leave exactly N - Q finite angles missing.
    EXPECT_EQ(257u + 1 - u32(mapped.size()), 257u - 100u);
}

TEST(GenerateAngleSet, DeterministicAndOrderedByWeight) {
    const std::vector<RationalAngle> a = generate_angle_set(8, Coverage::halfplane, 7, 7, 7);
    const std::vector<RationalAngle> b = generate_angle_set(8, Coverage::halfplane, 7, 7, 7);
    EXPECT_EQ(a, b);
    EXPECT_EQ(a[0], rational_angle(1, 0));  // weight-1 vertical comes first
    EXPECT_EQ(a[1], rational_angle(0, 1));
    for (std::size_t i = 1; i < a.size(); ++i) {
        EXPECT_GE(std::abs(a[i].p) + std::abs(a[i].q), std::abs(a[i - 1].p) + std::abs(a[i - 1].q));
    }
}

TEST(GenerateAngleSet, ValidatesArguments) {
    EXPECT_THROW(generate_angle_set(0, Coverage::halfplane, 5, 5, 5), std::invalid_argument);
    EXPECT_THROW(generate_angle_set(7, Coverage::halfplane, 5, 5, 5), std::invalid_argument);
    EXPECT_THROW(generate_angle_set(3, Coverage::halfplane, 5, 5, 6), std::invalid_argument);
}

TEST(MappingMultiplicity, ShortestVectorsAreDistinct) {
    const std::vector<u64> hist = mapping_multiplicity(11, Coverage::halfplane, 1);
    for (u64 c : hist) EXPECT_LE(c, 1u);
}

TEST(MappingMultiplicity, MapIsSurjectiveWithLargeEnoughBound) {
    for (u32 n : {5u, 7u, 11u, 13u, 17u, 23u}) {
        const std::vector<u64> hist = mapping_multiplicity(n, Coverage::halfplane, n);
        for (std::size_t i = 0; i < hist.size(); ++i) {
            EXPECT_GE(hist[i], 1u) << "n=" << n << " angle=" << i;
        }
    }
}

TEST(MappingMultiplicity, HistogramIsAPartition) {
    const u32 n = 13, bound = 9;
    const std::vector<u64> hist = mapping_multiplicity(n, Coverage::quadrant, bound);
    u64 enumerated = 0;
    for (i64 q = 0; q <= bound; ++q) {
        for (i64 p = 0; p <= bound; ++p) {
            if (p == 0 && q == 0) continue;
            if (q == 0 && p != 1) continue;
            if (std::gcd(p, q) != 1) continue;
            ++enumerated;
        }
    }
    u64 total = 0;
    for (u64 c : hist) total += c;
    EXPECT_EQ(total, enumerated);
}

TEST(MappingMultiplicity, QuadrantHistogramIsRoughlyFlat) {
    const std::vector<u64> hist = mapping_multiplicity(23, Coverage::quadrant, 46);
    u64 min = hist[0], max = hist[0], total = 0;
    for (u64 c : hist) {
        min = std::min(min, c);
        max = std::max(max, c);
        total += c;
    }
    EXPECT_GE(min, 1u);
    const double mean = double(total) / double(hist.size());
    EXPECT_LE(double(max), 2.0 * mean);
    EXPECT_GE(double(min), mean / 2.0);
}

TEST(BuildFrtSpace, RejectsCollidingAngles) {
    const u32 n = 5;
    const ModRing ring = select_modulus(n, 300);
    std::mt19937 rng(609);
    const PixelImage pixels = oracles::random_pixels(rng, 3, 3);
    // (1,1) and (-4,1)? p = 1 - 5 = -4 maps to the same slope at N = 5.
    const std::vector<MojetteProjection> projs{
        mojette_project(pixels, rational_angle(1, 1)),
        mojette_project(pixels, rational_angle(-4, 1)),
    };
    EXPECT_THROW(build_frt_space(projs, n, ring), std::invalid_argument);
}

TEST(BuildFrtSpace, MarksMappedRowsKnown) {
    const u32 n = 7;
    const ModRing ring = select_modulus(n, 300);
    std::mt19937 rng(610);
    const PixelImage pixels = oracles::random_pixels(rng, 3, 3);
    const std::vector<RationalAngle> set = generate_angle_set(4, Coverage::halfplane, 3, 3, n);
    std::vector<MojetteProjection> projs;
    for (const RationalAngle& a : set) projs.push_back(mojette_project(pixels, a));
    const FrtSpace space = build_frt_space(projs, n, ring);
    EXPECT_EQ(space.known_count(), 4u);
    const FrtSpace full = frt_forward(embed_image(ring, n, pixels));
    for (const RationalAngle& a : set) {
        const Angle m = map_angle_to_frt(a, n);
        EXPECT_EQ(space.row(m), full.row(m));
    }
}
