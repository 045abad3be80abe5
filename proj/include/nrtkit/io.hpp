#pragma once

#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "nrtkit/frt.hpp"
#include "nrtkit/modring.hpp"
#include "nrtkit/mojette.hpp"

namespace nrtkit {

// Projection-set text format:
//   FRT N M
//   <m> t0 t1 ... t(N-1)      one line per slope, or: MISSING <m>
//   PERP t0 t1 ... t(N-1)     row sums, or: MISSING PERP

inline void write_frt(std::ostream& out, const FrtSpace& space) {
    out << "FRT " << space.n << " " << space.ring.modulus << "\n";
    for (u32 m = 0; m <= space.n; ++m) {
        const Angle a = m == space.n ? Angle::perp() : Angle::slope(m);
        if (!space.is_known(a)) {
            out << "MISSING ";
            if (a.is_perp()) out << "PERP\n";
            else out << m << "\n";
            continue;
        }
        if (a.is_perp()) out << "PERP";
        else out << m;
        for (u32 v : space.row(a)) out << " " << v;
        out << "\n";
    }
}

inline void write_frt(const std::string& path, const FrtSpace& space) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("frt: cannot write " + path);
    write_frt(out, space);
}

inline FrtSpace read_frt(std::istream& in) {
    std::string tag;
    u32 n = 0, m = 0;
    if (!(in >> tag >> n >> m) || tag != "FRT") throw std::runtime_error("frt: bad header");
    const ModRing ring = make_ring(m, n);
    FrtSpace space = make_frt_space(ring, n);

    bool have_total = false;
    u64 total = 0;
    for (u32 line = 0; line <= n; ++line) {
        std::string label;
        if (!(in >> label)) throw std::runtime_error("frt: truncated file");
        if (label == "MISSING") {
            if (!(in >> label)) throw std::runtime_error("frt: truncated MISSING row");
            continue;  // rows default to unknown
        }
        Angle a = Angle::perp();
        if (label != "PERP") {
            try {
                a = Angle::slope(u32(std::stoul(label)));
            } catch (const std::exception&) {
                throw std::runtime_error("frt: bad row label '" + label + "'");
            }
        }
        if (!a.is_perp() && a.m >= n) throw std::runtime_error("frt: slope out of range");
        if (space.is_known(a)) throw std::runtime_error("frt: duplicate row " + label);
        std::vector<u32> row(n);
        u64 sum = 0;
        for (u32 t = 0; t < n; ++t) {
            u64 v;
            if (!(in >> v)) throw std::runtime_error("frt: truncated row");
            if (v >= ring.modulus) throw std::runtime_error("frt: value not reduced mod M");
            row[t] = u32(v);
            sum += v;
        }
        sum %= ring.modulus;
        if (have_total && sum != total)
            throw std::runtime_error("frt: projection rows disagree on the image total");
        total = sum;
        have_total = true;
        space.set_row(a, std::move(row));
    }
    return space;
}

inline FrtSpace read_frt(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("frt: cannot open " + path);
    return read_frt(in);
}

// Mojette text format:
//   MOJ Q P
//   <p> <q> <offset> b0 b1 ... b(K-1)    one line per projection

struct MojetteFile {
    u32 rows = 0;  // Q
    u32 cols = 0;  // P
    std::vector<MojetteProjection> projections;
};

inline void write_moj(std::ostream& out, u32 rows, u32 cols,
                      const std::vector<MojetteProjection>& projections) {
    out << "MOJ " << rows << " " << cols << "\n";
    for (const MojetteProjection& proj : projections) {
        if (proj.bins.size() != mojette_bin_count(proj.angle, rows, cols))
            throw std::invalid_argument("moj: bin count does not match image dimensions");
        out << proj.angle.p << " " << proj.angle.q << " " << proj.bin_offset;
        for (i64 b : proj.bins) out << " " << b;
        out << "\n";
    }
}

inline void write_moj(const std::string& path, u32 rows, u32 cols,
                      const std::vector<MojetteProjection>& projections) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("moj: cannot write " + path);
    write_moj(out, rows, cols, projections);
}

inline MojetteFile read_moj(std::istream& in) {
    std::string tag;
    MojetteFile file;
    if (!(in >> tag >> file.rows >> file.cols) || tag != "MOJ")
        throw std::runtime_error("moj: bad header");
    if (file.rows == 0 || file.cols == 0) throw std::runtime_error("moj: empty image");
    bool have_total = false;
    i64 total = 0;
    i64 p, q;
    while (in >> p >> q) {
        MojetteProjection proj;
        proj.angle = rational_angle(p, q);
        if (!(in >> proj.bin_offset)) throw std::runtime_error("moj: truncated projection");
        proj.bins.resize(mojette_bin_count(proj.angle, file.rows, file.cols));
        i64 sum = 0;
        for (i64& b : proj.bins) {
            if (!(in >> b)) throw std::runtime_error("moj: truncated bins");
            sum += b;
        }
        if (have_total && sum != total)
            throw std::runtime_error("moj: projections disagree on the image total");
        total = sum;
        have_total = true;
        file.projections.push_back(std::move(proj));
    }
    if (file.projections.empty()) throw std::runtime_error("moj: no projections");
    return file;
}

inline MojetteFile read_moj(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("moj: cannot open " + path);
    return read_moj(in);
}

inline void write_histogram_csv(std::ostream& out, const std::vector<u64>& histogram) {
    out << "angle,count\n";
    for (std::size_t i = 0; i < histogram.size(); ++i) {
        if (i + 1 == histogram.size()) out << "PERP," << histogram[i] << "\n";
        else out << i << "," << histogram[i] << "\n";
    }
}

inline void write_angles_csv(std::ostream& out, const std::vector<RationalAngle>& angles, u32 n) {
    out << "p,q,finite_angle\n";
    for (const RationalAngle& a : angles) {
        const Angle m = map_angle_to_frt(a, n);
        out << a.p << "," << a.q << ",";
        if (m.is_perp()) out << "PERP\n";
        else out << m.m << "\n";
    }
}

}  // namespace nrtkit
