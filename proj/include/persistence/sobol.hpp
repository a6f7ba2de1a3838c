#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "persistence/errors.hpp"
#include "persistence/rng.hpp"

namespace persistence {

namespace detail {

// Primitive polynomials over GF(2) in ascending degree, found by exhaustive
// order check (the multiplicative order of x mod p must be 2^deg - 1).
// Encoding: full coefficient mask including the leading bit.
inline std::vector<std::uint32_t> primitive_polynomials(std::size_t count) {
    std::vector<std::uint32_t> polys;
    for (int deg = 1; polys.size() < count && deg <= 12; ++deg) {
        const std::uint32_t lead = 1u << deg;
        const std::uint32_t full_order = lead - 1u;
        for (std::uint32_t p = lead | 1u; p < (lead << 1) && polys.size() < count; p += 2) {
            // multiply-by-x modulo p, starting from x
            std::uint32_t acc = 2u;
            if (acc & lead) acc ^= p;
            std::uint32_t ord = 1;
            bool prim = true;
            while (acc != 1u) {
                acc <<= 1;
                if (acc & lead) acc ^= p;
                if (++ord > full_order) {
                    prim = false;
                    break;
                }
                if (acc == 0u) {
                    prim = false;
                    break;
                }
            }
            if (prim && ord == full_order) polys.push_back(p);
        }
    }
    if (polys.size() < count) throw numerical_error("sobol: primitive polynomial table exhausted");
    return polys;
}

}  // namespace detail

// Base-2 digital net (Sobol-type) with per-randomization linear digit
// scrambling and digital shift. Direction-number initial values come from a
// fixed internal stream, so the unscrambled net is a compile-independent
// constant; all randomness enters through (seed, randomization).
class ScrambledSobol {
  public:
    static constexpr int kBits = 32;

    explicit ScrambledSobol(int dims) : dims_(dims) {
        if (dims < 1 || dims > 128) throw input_error("ScrambledSobol: dims must be in [1,128]");
        dirs_.assign(static_cast<std::size_t>(dims) * kBits, 0u);
        // dimension 0: van der Corput
        for (int i = 0; i < kBits; ++i) dirs_[static_cast<std::size_t>(i)] = 1u << (kBits - 1 - i);
        if (dims > 1) {
            auto polys = detail::primitive_polynomials(static_cast<std::size_t>(dims - 1));
            for (int d = 1; d < dims; ++d) {
                const std::uint32_t p = polys[static_cast<std::size_t>(d - 1)];
                const int s = 31 - std::countl_zero(p);
                SplitMix64 rng(0x536f626f6cULL, static_cast<std::uint64_t>(d));
                std::uint32_t* v = &dirs_[static_cast<std::size_t>(d) * kBits];
                for (int i = 0; i < kBits; ++i) {
                    if (i < s) {
                        // m_{i+1} odd, < 2^{i+1}
                        std::uint32_t m = (rng.next_u32() | 1u) & ((2u << i) - 1u);
                        v[i] = m << (kBits - 1 - i);
                    } else {
                        std::uint32_t acc = v[i - s] ^ (v[i - s] >> s);
                        for (int j = 1; j < s; ++j)
                            if (p & (1u << (s - j))) acc ^= v[i - j];
                        v[i] = acc;
                    }
                }
            }
        }
    }

    int dims() const { return dims_; }

    // Visit `points` scrambled points of randomization `r`; `f` receives a
    // pointer to dims() doubles in (0,1). Fully determined by (seed, r).
    template <class F>
    void for_each_point(std::uint64_t seed, std::uint64_t r, std::uint64_t points, F&& f) const {
        const std::size_t D = static_cast<std::size_t>(dims_);
        std::vector<std::uint32_t> w(D * kBits);  // scrambled direction numbers
        std::vector<std::uint32_t> shift(D), state(D);
        SplitMix64 rng(seed, r);
        for (std::size_t d = 0; d < D; ++d) {
            std::uint32_t rows[kBits];
            for (int i = 0; i < kBits; ++i) {
                std::uint32_t above = i == 0 ? 0u : (~0u << (kBits - i));
                rows[i] = (rng.next_u32() & above) | (1u << (kBits - 1 - i));
            }
            for (int j = 0; j < kBits; ++j) {
                std::uint32_t x = dirs_[d * kBits + static_cast<std::size_t>(j)];
                std::uint32_t y = 0;
                for (int i = 0; i < kBits; ++i)
                    y |= static_cast<std::uint32_t>(std::popcount(rows[i] & x) & 1) << (kBits - 1 - i);
                w[d * kBits + static_cast<std::size_t>(j)] = y;
            }
            shift[d] = rng.next_u32();
            state[d] = shift[d];
        }
        std::vector<double> u(D);
        for (std::uint64_t k = 0; k < points; ++k) {
            for (std::size_t d = 0; d < D; ++d)
                u[d] = (static_cast<double>(state[d]) + 0.5) * 0x1p-32;
            f(u.data());
            int bit = std::countr_zero(~k);  // Gray-code step
            if (bit < kBits)
                for (std::size_t d = 0; d < D; ++d)
                    state[d] ^= w[d * kBits + static_cast<std::size_t>(bit)];
        }
    }

  private:
    int dims_;
    std::vector<std::uint32_t> dirs_;
};

}  // namespace persistence
