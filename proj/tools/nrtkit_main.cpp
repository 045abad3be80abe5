// Command-line front end: exact projection transforms, Ghost demos, and
// the limited-angle reconstruction pipeline.

#include <chrono>
#include <cstdint>
#include <exception>
#include <iostream>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nrtkit/nrtkit.hpp"

namespace {

using namespace nrtkit;
using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

u32 next_prime_at_least(u32 value) {
    u32 n = value < 2 ? 2 : value;
    while (!is_prime(n)) ++n;
    return n;
}

// Power-of-two convolution length Rader uses internally for prime N, the
// extra factor the pipeline modulus should provide.
u32 rader_conv_length(u32 n) {
    if (n <= 2) return 1;
    const u32 m = n - 1;
    if ((m & (m - 1)) == 0) return m;
    return next_pow2_above(2 * n - 4);
}

ModRing pipeline_ring(u32 n, u32 modulus_flag) {
    if (modulus_flag != 0) return make_ring(modulus_flag, n);
    return select_modulus(n, 255, rader_conv_length(n));
}

Coverage parse_coverage(const std::string& name) {
    if (name == "octant1") return Coverage::octant1;
    if (name == "quadrant") return Coverage::quadrant;
    if (name == "halfplane") return Coverage::halfplane;
    throw CLI::ValidationError("--coverage", "expected octant1, quadrant or halfplane");
}

std::vector<Angle> parse_missing_list(const std::string& text, u32 n) {
    std::vector<Angle> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        const std::string item = text.substr(pos, comma - pos);
        pos = comma + 1;
        if (item.empty()) continue;
        if (item == "perp" || item == "PERP") {
            out.push_back(Angle::perp());
            continue;
        }
        const std::size_t dash = item.find('-');
        if (dash != std::string::npos && dash > 0) {
            const u32 lo = u32(std::stoul(item.substr(0, dash)));
            const u32 hi = u32(std::stoul(item.substr(dash + 1)));
            for (u32 m = lo; m <= hi; ++m) out.push_back(Angle::slope(m));
        } else {
            out.push_back(Angle::slope(u32(std::stoul(item))));
        }
    }
    if (out.empty()) throw CLI::ValidationError("--missing", "empty angle list");
    for (Angle a : out) {
        if (!a.is_perp() && a.m >= n)
            throw CLI::ValidationError("--missing", "angle exceeds N-1");
    }
    return out;
}

// Residues scaled linearly from [0, M-1] onto [0, 255] for visual output.
PixelImage scale_residues(const ImageGrid& img) {
    PixelImage out = make_pixel_image(img.n, img.n);
    const u64 span = img.ring.modulus - 1;
    for (u32 x = 0; x < img.n; ++x) {
        for (u32 y = 0; y < img.n; ++y)
            out.at(x, y) = i64((u64(img.at(x, y)) * 255 + span / 2) / span);
    }
    return out;
}

PixelImage scale_operator_table(const OperatorTable& table, u32 modulus) {
    PixelImage out = make_pixel_image(table.n, table.n);
    const u64 span = modulus - 1;
    for (u32 d = 0; d < table.n; ++d) {
        for (u32 u = 0; u < table.n; ++u)
            out.at(d, u) = i64((u64(table.at(d, u)) * 255 + span / 2) / span);
    }
    return out;
}

std::string residue_comment(u32 modulus) {
    return "residues 0.." + std::to_string(modulus - 1) + " scaled linearly to 0..255";
}

PixelImage synthetic_image(u32 rows, u32 cols, u32 seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<u32> dist(0, 255);
    PixelImage img = make_pixel_image(rows, cols);
    for (i64& v : img.v) v = dist(rng);
    return img;
}

// Smallest prime grid that fits the image, leaves at least one redundant
// row, and keeps the mapped angles of `count` generated projections
// distinct.
u32 auto_projection_size(u32 rows, u32 cols, u32 count, Coverage coverage) {
    u32 n = next_prime_at_least(std::max(rows + 1, cols));
    for (int attempts = 0; attempts < 64; ++attempts) {
        if (count <= n + 1) {
            try {
                generate_angle_set(count, coverage, rows, cols, n);
                return n;
            } catch (const std::exception&) {
            }
        }
        n = next_prime_at_least(n + 1);
    }
    throw std::runtime_error("could not find a grid size for this projection count");
}

// Smallest prime grid that fits the image, leaves at least one redundant
// row, and maps the given angles to pairwise distinct finite angles.
u32 auto_reconstruction_size(u32 rows, u32 cols, const std::vector<RationalAngle>& angles) {
    u32 n = next_prime_at_least(std::max(rows + 1, cols));
    for (int attempts = 0; attempts < 64; ++attempts) {
        if (angles.size() <= std::size_t(n) + 1) {
            std::set<u32> mapped;
            for (const RationalAngle& a : angles) mapped.insert(angle_row(map_angle_to_frt(a, n), n));
            if (mapped.size() == angles.size()) return n;
        }
        n = next_prime_at_least(n + 1);
    }
    throw std::runtime_error("could not find a grid size with distinct mapped angles");
}

struct ReconstructionResult {
    PixelImage image;
    std::vector<Angle> missing;
    bool katz = false;
};

ReconstructionResult reconstruct_from_projections(const MojetteFile& file, u32 n,
                                                  const ModRing& ring) {
    if (file.projections.size() < std::size_t(file.rows) + 1)
        throw std::runtime_error("reconstruction needs at least Q+1 projections (information bound)");
    std::vector<RationalAngle> angles;
    for (const MojetteProjection& p : file.projections) angles.push_back(p.angle);

    const FrtSpace space = build_frt_space(file.projections, n, ring);
    ReconstructionResult result;
    for (Angle a : all_angles(n)) {
        if (!space.is_known(a)) result.missing.push_back(a);
    }
    result.katz = katz_check(angles, std::max(file.rows, file.cols));

    ImageGrid recovered;
    if (result.missing.empty()) {
        recovered = frt_inverse(space);
    } else {
        const GhostSpec spec = make_ghost_spec(ring, n, result.missing);
        const DeghostPlan plan = build_deconv_ghost(spec, file.rows);
        recovered = deghost_rows(space, plan);
    }
    recovered.rows = file.rows;
    recovered.cols = file.cols;
    result.image = lift_residues(recovered, 255);
    return result;
}

int cmd_forward(const std::string& input, const std::string& output, u32 size, u32 modulus) {
    const PixelImage img = read_pgm(input);
    const u32 n = size ? size : next_prime_at_least(std::max(img.rows, img.cols));
    if (!is_prime(n)) throw std::runtime_error("grid size must be prime");
    const ModRing ring = modulus ? make_ring(modulus, n) : select_modulus(n, 255);
    const FrtSpace proj = frt_forward(embed_image(ring, n, img));
    write_frt(output, proj);
    std::cout << "wrote " << output << " (N=" << n << " M=" << ring.modulus << ", "
              << img.rows << "x" << img.cols << " embedded)\n";
    return 0;
}

int cmd_inverse(const std::string& input, const std::string& output, u32 rows, u32 cols) {
    const FrtSpace proj = read_frt(input);
    if (proj.known_count() != proj.n + 1)
        throw std::runtime_error("projection set has missing rows; use reconstruct");
    ImageGrid img = frt_inverse(proj);
    img.rows = rows ? rows : proj.n;
    img.cols = cols ? cols : proj.n;
    write_pgm(output, lift_residues(img, 255));
    std::cout << "wrote " << output << " (" << img.rows << "x" << img.cols << ")\n";
    return 0;
}

int cmd_project(const std::string& input, const std::string& output, u32 size, u32 count,
                const std::string& coverage_name) {
    const PixelImage img = read_pgm(input);
    const Coverage coverage = parse_coverage(coverage_name);
    const u32 projections = count ? count : img.rows + 1;
    const u32 n = size ? size : auto_projection_size(img.rows, img.cols, projections, coverage);
    if (!is_prime(n)) throw std::runtime_error("grid size must be prime");
    const std::vector<RationalAngle> angles =
        generate_angle_set(projections, coverage, img.rows, img.cols, n);
    std::vector<MojetteProjection> projs;
    projs.reserve(angles.size());
    for (const RationalAngle& a : angles) projs.push_back(mojette_project(img, a));
    write_moj(output, img.rows, img.cols, projs);
    std::cout << "wrote " << output << " (" << projections << " projections, grid N=" << n
              << ")\n";
    return 0;
}

int cmd_reconstruct(const std::string& input, const std::string& output, u32 size, u32 modulus,
                    const std::string& emit_ghost, const std::string& emit_operators) {
    const MojetteFile file = read_moj(input);
    std::vector<RationalAngle> file_angles;
    for (const MojetteProjection& p : file.projections) file_angles.push_back(p.angle);
    const u32 n = size ? size : auto_reconstruction_size(file.rows, file.cols, file_angles);
    if (!is_prime(n)) throw std::runtime_error("grid size must be prime");
    const ModRing ring = pipeline_ring(n, modulus);
    const ReconstructionResult result = reconstruct_from_projections(file, n, ring);
    write_pgm(output, result.image);
    if (!emit_ghost.empty() && !result.missing.empty()) {
        const ImageGrid ghost = build_ghost_1d(make_ghost_spec(ring, n, result.missing));
        write_pgm(emit_ghost, scale_residues(ghost), residue_comment(ring.modulus));
    }
    if (!emit_operators.empty()) {
        write_pgm(emit_operators, scale_operator_table(operator_table(ring), ring.modulus),
                  residue_comment(ring.modulus));
    }
    std::cout << "wrote " << output << " (N=" << n << " M=" << ring.modulus
              << ", projections=" << file.projections.size()
              << ", ghosts=" << result.missing.size()
              << ", katz=" << (result.katz ? "pass" : "fail") << ", exact lift)\n";
    return 0;
}

int cmd_ghost_demo(u32 size, const std::string& missing_text, u32 modulus,
                   const std::string& output, const std::string& operators_output) {
    if (!is_prime(size)) throw std::runtime_error("grid size must be prime");
    const ModRing ring = modulus ? make_ring(modulus, size) : select_modulus(size, 2);
    const std::vector<Angle> missing = parse_missing_list(missing_text, size);
    const GhostSpec spec = make_ghost_spec(ring, size, missing);
    const ImageGrid ghost = build_ghost_1d(spec);
    if (!ghost_zero_check(ghost, spec))
        throw std::runtime_error("internal check failed: ghost projections not zero");
    write_pgm(output, scale_residues(ghost), residue_comment(ring.modulus));
    std::cout << "wrote " << output << " (N=" << size << " M=" << ring.modulus << ", "
              << missing.size() << " missing angles)\n";
    if (!operators_output.empty()) {
        write_pgm(operators_output, scale_operator_table(operator_table(ring), ring.modulus),
                  residue_comment(ring.modulus));
        std::cout << "wrote " << operators_output << " (" << size << "x" << size
                  << " operator table)\n";
    }
    return 0;
}

int cmd_angles_generate(u32 size, u32 count, const std::string& coverage_name, u32 rows, u32 cols,
                        const std::string& output) {
    const Coverage coverage = parse_coverage(coverage_name);
    const u32 r = rows ? rows : size;
    const u32 c = cols ? cols : size;
    const std::vector<RationalAngle> set =
        generate_angle_set(count ? count : size + 1, coverage, r, c, size);
    if (output.empty()) {
        write_angles_csv(std::cout, set, size);
    } else {
        std::ofstream out(output);
        if (!out) throw std::runtime_error("cannot write " + output);
        write_angles_csv(out, set, size);
        std::cout << "wrote " << output << " (" << set.size() << " angles)\n";
    }
    return 0;
}

int cmd_angles_multiplicity(u32 size, const std::string& coverage_name, u32 bound,
                            const std::string& output) {
    const std::vector<u64> hist = mapping_multiplicity(size, parse_coverage(coverage_name), bound);
    if (output.empty()) {
        write_histogram_csv(std::cout, hist);
    } else {
        std::ofstream out(output);
        if (!out) throw std::runtime_error("cannot write " + output);
        write_histogram_csv(out, hist);
        std::cout << "wrote " << output << "\n";
    }
    return 0;
}

int cmd_bench(u32 size, u32 rows, u32 cols, u32 seed, u32 count, u32 modulus,
              const std::string& coverage_name) {
    const Coverage coverage = parse_coverage(coverage_name);
    const u32 projections = count ? count : rows + 1;
    if (!is_prime(size)) throw std::runtime_error("grid size must be prime");

    const auto t0 = Clock::now();
    const PixelImage img = synthetic_image(rows, cols, seed);
    const ModRing ring = pipeline_ring(size, modulus);
    const std::vector<RationalAngle> angles =
        generate_angle_set(projections, coverage, rows, cols, size);
    const double t_setup = ms_since(t0);

    const auto t1 = Clock::now();
    std::vector<MojetteProjection> projs;
    for (const RationalAngle& a : angles) projs.push_back(mojette_project(img, a));
    const double t_project = ms_since(t1);

    const auto t2 = Clock::now();
    const FrtSpace space = build_frt_space(projs, size, ring);
    const double t_rebin = ms_since(t2);

    const auto t3 = Clock::now();
    const ImageGrid ghosted = cbp_partial(space);
    const double t_cbp = ms_since(t3);

    std::vector<Angle> missing;
    for (Angle a : all_angles(size)) {
        if (!space.is_known(a)) missing.push_back(a);
    }
    const auto t4 = Clock::now();
    const DeghostPlan plan = build_deconv_ghost(make_ghost_spec(ring, size, missing), rows);
    const double t_plan = ms_since(t4);

    const auto t5 = Clock::now();
    ImageGrid recovered = deghost_rows(ghosted, plan);
    const double t_deghost = ms_since(t5);

    recovered.rows = rows;
    recovered.cols = cols;
    const PixelImage lifted = lift_residues(recovered, 255);
    const bool exact = lifted.v == img.v;
    const double total = ms_since(t0);

    std::cout << "configuration: " << rows << "x" << cols << " image, N=" << size
              << ", M=" << ring.modulus << ", projections=" << projections
              << ", ghosts=" << missing.size() << " (N-Q=" << size - rows << ")\n";
    std::cout << "setup          " << t_setup << " ms\n";
    std::cout << "project        " << t_project << " ms\n";
    std::cout << "rebin          " << t_rebin << " ms\n";
    std::cout << "back-project   " << t_cbp << " ms\n";
    std::cout << "ghost plan     " << t_plan << " ms\n";
    std::cout << "de-ghost       " << t_deghost << " ms\n";
    std::cout << "total          " << total << " ms\n";
    std::cout << "exact:         " << (exact ? "true" : "false") << "\n";
    return exact ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact integer Radon transforms, Ghosts and limited-angle reconstruction"};
    app.require_subcommand(1);

    std::string input, output, coverage = "halfplane", missing_text, emit_ghost, emit_operators,
                operators_output;
    u32 size = 0, modulus = 0, rows = 0, cols = 0, count = 0, seed = 1, bound = 0;

    CLI::App* forward = app.add_subcommand("forward", "Project a PGM image into a projection set");
    forward->add_option("-i,--input", input, "input PGM")->required();
    forward->add_option("-o,--output", output, "output FRT file")->required();
    forward->add_option("-N,--size", size, "prime grid size (default: smallest fitting prime)");
    forward->add_option("-M,--modulus", modulus, "ring modulus (default: auto)");

    CLI::App* inverse = app.add_subcommand("inverse", "Invert a complete projection set to a PGM");
    inverse->add_option("-i,--input", input, "input FRT file")->required();
    inverse->add_option("-o,--output", output, "output PGM")->required();
    inverse->add_option("--rows", rows, "crop to this many rows");
    inverse->add_option("--cols", cols, "crop to this many columns");

    CLI::App* project = app.add_subcommand("project", "Take aperiodic rational-angle projections");
    project->add_option("-i,--input", input, "input PGM")->required();
    project->add_option("-o,--output", output, "output MOJ file")->required();
    project->add_option("-N,--size", size, "target prime grid size (default: auto)");
    project->add_option("-K,--projections", count, "projection count (default: rows+1)");
    project->add_option("--coverage", coverage, "octant1|quadrant|halfplane (default halfplane)");

    CLI::App* reconstruct =
        app.add_subcommand("reconstruct", "Exact limited-angle reconstruction from a MOJ file");
    reconstruct->add_option("-i,--input", input, "input MOJ file")->required();
    reconstruct->add_option("-o,--output", output, "output PGM")->required();
    reconstruct->add_option("-N,--size", size, "prime grid size (default: auto)");
    reconstruct->add_option("-M,--modulus", modulus, "ring modulus (default: auto)");
    reconstruct->add_option("--emit-ghost", emit_ghost, "also write the Ghost image (PGM path)");
    reconstruct->add_option("--emit-operators", emit_operators,
                            "also write the operator table (PGM path)");

    CLI::App* ghost_demo = app.add_subcommand("ghost-demo", "Build a Ghost and visualize it");
    ghost_demo->add_option("-N,--size", size, "prime grid size")->required();
    ghost_demo->add_option("--missing", missing_text, "missing angles, e.g. 1-4 or 0,2,perp")
        ->required();
    ghost_demo->add_option("-M,--modulus", modulus, "ring modulus (default: auto)");
    ghost_demo->add_option("-o,--output", output, "output ghost PGM")->required();
    ghost_demo->add_option("--operators", operators_output, "output operator-table PGM");

    CLI::App* angles = app.add_subcommand("angles", "Angle-set utilities");
    angles->require_subcommand(1);
    CLI::App* angles_generate = angles->add_subcommand("generate", "Generate a limited angle set");
    angles_generate->add_option("-N,--size", size, "prime grid size")->required();
    angles_generate->add_option("-K,--count", count, "number of angles (default: N+1)");
    angles_generate->add_option("--coverage", coverage, "octant1|quadrant|halfplane");
    angles_generate->add_option("--rows", rows, "image rows (default: N)");
    angles_generate->add_option("--cols", cols, "image columns (default: N)");
    angles_generate->add_option("-o,--output", output, "CSV path (default: stdout)");
    CLI::App* angles_multiplicity =
        angles->add_subcommand("multiplicity", "Histogram of vectors per finite angle");
    angles_multiplicity->add_option("-N,--size", size, "prime grid size")->required();
    angles_multiplicity->add_option("--bound", bound, "max(|p|, |q|) bound")->required();
    angles_multiplicity->add_option("--coverage", coverage, "octant1|quadrant|halfplane");
    angles_multiplicity->add_option("-o,--output", output, "CSV path (default: stdout)");

    CLI::App* bench = app.add_subcommand("bench", "Time the reconstruction pipeline");
    bench->add_option("-N,--size", size, "prime grid size (default 257)");
    bench->add_option("--rows", rows, "image rows (default 100)");
    bench->add_option("--cols", cols, "image columns (default 100)");
    bench->add_option("-K,--projections", count, "projection count (default rows+1)");
    bench->add_option("-M,--modulus", modulus, "ring modulus (default: auto)");
    bench->add_option("--coverage", coverage, "octant1|quadrant|halfplane");
    bench->add_option("--seed", seed, "synthetic image seed (default 1)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (forward->parsed()) return cmd_forward(input, output, size, modulus);
        if (inverse->parsed()) return cmd_inverse(input, output, rows, cols);
        if (project->parsed()) return cmd_project(input, output, size, count, coverage);
        if (reconstruct->parsed())
            return cmd_reconstruct(input, output, size, modulus, emit_ghost, emit_operators);
        if (ghost_demo->parsed())
            return cmd_ghost_demo(size, missing_text, modulus, output, operators_output);
        if (angles_generate->parsed())
            return cmd_angles_generate(size, count, coverage, rows, cols, output);
        if (angles_multiplicity->parsed())
            return cmd_angles_multiplicity(size, coverage, bound, output);
        if (bench->parsed())
            return cmd_bench(size ? size : 257, rows ? rows : 100, cols ? cols : 100, seed, count,
                             modulus, coverage);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
