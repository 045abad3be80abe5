#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "nrtkit/modring.hpp"

namespace nrtkit {

/// Residues of one transform block, reduced mod ring.modulus.
struct ResidueVector {
    ModRing ring;
    std::vector<u32> values;

    u32 size() const { return u32(values.size()); }
};

inline ResidueVector residue_vector(const ModRing& ring, std::vector<u32> values) {
    for (u32& v : values) v %= ring.modulus;
    return ResidueVector{ring, std::move(values)};
}

inline bool has_multiplicative_order(const ModRing& ring, u32 x, u32 order) {
    if (x == 0 || order == 0) return false;
    if (ring.pow(x, order) != 1) return false;
    for (u64 f : prime_factorize(order)) {
        if (ring.pow(x, order / f) == 1) return false;
    }
    return true;
}

/// O(L^2) evaluation of X(u) = sum_j x(j) * root^(j*u). The reference all
/// fast paths are checked against.
inline std::vector<u32> ntt_direct(const ModRing& ring, const std::vector<u32>& x, u32 root) {
    const u32 n = u32(x.size());
    if (n == 0) throw std::invalid_argument("ntt_direct: empty input");
    if (!(n == 1 && root == 1) && !has_multiplicative_order(ring, root, n))
        throw std::invalid_argument("ntt_direct: root order does not match length");
    std::vector<u32> out(n, 0);
    for (u32 u = 0; u < n; ++u) {
        const u32 step = ring.pow(root, u);
        u32 w = 1;
        u64 acc = 0;
        for (u32 j = 0; j < n; ++j) {
            acc += u64(ring.mul(x[j], w));
            w = ring.mul(w, step);
        }
        out[u] = ring.reduce(acc);
    }
    return out;
}

inline std::vector<u32> ntt_pow2(const ModRing& ring, std::vector<u32> x, u32 root) {
    const u32 n = u32(x.size());
    if (n == 0 || (n & (n - 1)) != 0)
        throw std::invalid_argument("ntt_pow2: length must be a power of two");
    for (u32 i = 1, j = 0; i < n; ++i) {
        u32 bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(x[i], x[j]);
    }
    for (u32 len = 2; len <= n; len <<= 1) {
        const u32 wlen = ring.pow(root, n / len);
        for (u32 i = 0; i < n; i += len) {
            u32 w = 1;
            for (u32 j = 0; j < len / 2; ++j) {
                const u32 a = x[i + j];
                const u32 b = ring.mul(x[i + j + len / 2], w);
                x[i + j] = ring.add(a, b);
                x[i + j + len / 2] = ring.sub(a, b);
                w = ring.mul(w, wlen);
            }
        }
    }
    return x;
}

inline u32 next_pow2_above(u32 threshold) {
    u32 n = 1;
    while (n <= threshold) n <<= 1;
    return n;
}

/// Prime-length transform as a cyclic convolution of length p-1.
///
/// The DC term is the plain sum; the remaining coefficients come from
/// permuting the input by a^(-l) mod p, convolving against the circulant
/// row W(k) = root^(a^k mod p), adding x(0), and de-permuting the result
/// through u = a^k mod p. The convolution runs over a dyadic transform
/// when the ring has the required power-of-two root, either at length p-1
/// directly or zero-padded to the power of two above 2p-4; otherwise it
/// falls back to the exact quadratic convolution.
struct RaderPlan {
    enum class Backend { pow2_exact, pow2_padded, direct };

    u32 p = 0;
    std::vector<u32> in_idx;   // l -> a^(-l) mod p
    std::vector<u32> out_idx;  // k -> a^(k) mod p
    std::vector<u32> w;        // circulant row, length p-1
    Backend backend = Backend::direct;
    u32 conv_len = 0;
    u32 conv_root = 0;
    u32 conv_root_inv = 0;
    u32 conv_len_inv = 0;
    std::vector<u32> w_hat;    // dyadic transform of the (padded) row
};

inline RaderPlan make_rader_plan(const ModRing& ring, u32 p, u32 root) {
    if (!is_prime(p)) throw std::invalid_argument("ntt_rader: length must be prime");
    if (!has_multiplicative_order(ring, root, p))
        throw std::invalid_argument("ntt_rader: root order does not match length");
    RaderPlan plan;
    plan.p = p;
    const u32 a = u32(find_primitive_root(p));
    const u32 a_inv = u32(mod_inverse(a, p));
    plan.in_idx.resize(p - 1);
    plan.out_idx.resize(p - 1);
    plan.w.resize(p - 1);
    u32 fwd = 1, bwd = 1;
    for (u32 k = 0; k + 1 < p; ++k) {
        plan.out_idx[k] = fwd;
        plan.in_idx[k] = bwd;
        plan.w[k] = ring.pow(root, fwd);
        fwd = u32(u64(fwd) * a % p);
        bwd = u32(u64(bwd) * a_inv % p);
    }

    const u32 m = p - 1;
    const bool m_pow2 = (m & (m - 1)) == 0;
    if (m_pow2 && ring.supports_order(m)) {
        plan.backend = RaderPlan::Backend::pow2_exact;
        plan.conv_len = m;
    } else {
        const u32 padded = next_pow2_above(2 * p - 4);
        if (ring.supports_order(padded)) {
            plan.backend = RaderPlan::Backend::pow2_padded;
            plan.conv_len = padded;
        } else {
            plan.backend = RaderPlan::Backend::direct;
            plan.conv_len = m;
            return plan;
        }
    }
    plan.conv_root = ring.root_of_order(plan.conv_len);
    plan.conv_root_inv = ring.inv(plan.conv_root);
    plan.conv_len_inv = ring.inv(plan.conv_len % ring.modulus);
    std::vector<u32> row(plan.conv_len);
    for (u32 j = 0; j < plan.conv_len; ++j) row[j] = plan.w[j % m];
    plan.w_hat = ntt_pow2(ring, std::move(row), plan.conv_root);
    return plan;
}

inline std::vector<u32> rader_apply(const ModRing& ring, const RaderPlan& plan,
                                    const std::vector<u32>& x) {
    const u32 p = plan.p;
    if (x.size() != p) throw std::invalid_argument("ntt_rader: length mismatch with plan");
    const u32 m = p - 1;

    std::vector<u32> conv(m);
    if (plan.backend == RaderPlan::Backend::direct) {
        std::vector<u32> b(m);
        for (u32 l = 0; l < m; ++l) b[l] = x[plan.in_idx[l]];
        for (u32 k = 0; k < m; ++k) {
            u64 acc = 0;
            for (u32 l = 0; l < m; ++l) acc += u64(ring.mul(b[l], plan.w[(k + m - l) % m]));
            conv[k] = ring.reduce(acc);
        }
    } else {
        std::vector<u32> b(plan.conv_len, 0);
        b[0] = x[plan.in_idx[0]];
        const u32 shift = plan.conv_len - m;  // zeros between first and second element
        for (u32 l = 1; l < m; ++l) b[shift + l] = x[plan.in_idx[l]];
        b = ntt_pow2(ring, std::move(b), plan.conv_root);
        for (u32 j = 0; j < plan.conv_len; ++j) b[j] = ring.mul(b[j], plan.w_hat[j]);
        b = ntt_pow2(ring, std::move(b), plan.conv_root_inv);
        for (u32 k = 0; k < m; ++k) conv[k] = ring.mul(b[k], plan.conv_len_inv);
    }

    u64 dc = 0;
    for (u32 v : x) dc += v;
    std::vector<u32> out(p);
    out[0] = ring.reduce(dc);
    for (u32 k = 0; k < m; ++k) out[plan.out_idx[k]] = ring.add(x[0], conv[k]);
    return out;
}

inline std::vector<u32> ntt_rader(const ModRing& ring, const std::vector<u32>& x, u32 root) {
    return rader_apply(ring, make_rader_plan(ring, u32(x.size()), root), x);
}

enum class NttAlgorithm { direct, pow2, rader };

inline u32 transform_root(const ModRing& ring, u32 length) {
    return length == ring.length ? ring.root : ring.root_of_order(length);
}

inline std::vector<u32> ntt_dispatch(const ModRing& ring, const std::vector<u32>& x, u32 root,
                                     NttAlgorithm alg) {
    switch (alg) {
        case NttAlgorithm::direct: return ntt_direct(ring, x, root);
        case NttAlgorithm::pow2: return ntt_pow2(ring, x, root);
        case NttAlgorithm::rader: return ntt_rader(ring, x, root);
    }
    throw std::logic_error("ntt: unknown algorithm");
}

inline ResidueVector ntt_direct(const ResidueVector& v, u32 root) {
    return ResidueVector{v.ring, ntt_direct(v.ring, v.values, root)};
}

inline ResidueVector ntt_direct(const ResidueVector& v) {
    return ntt_direct(v, transform_root(v.ring, v.size()));
}

inline ResidueVector ntt_pow2(const ResidueVector& v) {
    return ResidueVector{v.ring, ntt_pow2(v.ring, v.values, transform_root(v.ring, v.size()))};
}

inline ResidueVector ntt_rader(const ResidueVector& v) {
    return ResidueVector{v.ring, ntt_rader(v.ring, v.values, transform_root(v.ring, v.size()))};
}

/// Inverse transform: forward pass with the inverted root, scaled by 1/L.
inline std::vector<u32> intt(const ModRing& ring, const std::vector<u32>& x, u32 root,
                             NttAlgorithm alg) {
    std::vector<u32> out = ntt_dispatch(ring, x, ring.inv(root), alg);
    const u32 scale = ring.inv(u32(x.size() % ring.modulus));
    for (u32& v : out) v = ring.mul(v, scale);
    return out;
}

inline ResidueVector intt(const ResidueVector& v, NttAlgorithm alg) {
    return ResidueVector{v.ring, intt(v.ring, v.values, transform_root(v.ring, v.size()), alg)};
}

/// Cached transform plans for one ring; the hot path of the 2D passes.
class NttEngine {
  public:
    explicit NttEngine(const ModRing& ring) : ring_(ring) {
        const u32 n = ring.length;
        root_inv_ = ring_.inv(ring_.root);
        len_inv_ = ring_.inv(n % ring_.modulus);
        if (n == 1) {
            kind_ = Kind::trivial;
        } else if ((n & (n - 1)) == 0) {
            kind_ = Kind::pow2;
        } else if (is_prime(n)) {
            kind_ = Kind::rader;
            fwd_plan_ = make_rader_plan(ring_, n, ring_.root);
            inv_plan_ = make_rader_plan(ring_, n, root_inv_);
        } else {
            kind_ = Kind::direct;
        }
    }

    const ModRing& ring() const { return ring_; }

    std::vector<u32> forward(const std::vector<u32>& x) const { return apply(x, false); }

    std::vector<u32> inverse(const std::vector<u32>& x) const {
        std::vector<u32> out = apply(x, true);
        for (u32& v : out) v = ring_.mul(v, len_inv_);
        return out;
    }

  private:
    enum class Kind { trivial, pow2, rader, direct };

    std::vector<u32> apply(const std::vector<u32>& x, bool inverted) const {
        if (x.size() != ring_.length) throw std::invalid_argument("NttEngine: length mismatch");
        const u32 root = inverted ? root_inv_ : ring_.root;
        switch (kind_) {
            case Kind::trivial: return x;
            case Kind::pow2: return ntt_pow2(ring_, x, root);
            case Kind::rader: return rader_apply(ring_, inverted ? inv_plan_ : fwd_plan_, x);
            case Kind::direct: return ntt_direct(ring_, x, root);
        }
        throw std::logic_error("NttEngine: unreachable");
    }

    ModRing ring_;
    u32 root_inv_ = 0;
    u32 len_inv_ = 0;
    Kind kind_ = Kind::direct;
    RaderPlan fwd_plan_;
    RaderPlan inv_plan_;
};

}  // namespace nrtkit
