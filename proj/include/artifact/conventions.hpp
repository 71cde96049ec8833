#pragma once

#include <atomic>

namespace artifact::conv {

// Global sign choices. Everything that depends on a convention reads it from here.

// Sign of the map term in cones and mapping fibers:
//   Cone(f):       d(x,y) = (-dx, s*f(x) + dy)
//   Cone(f)[-1]:   d(x,y) = (dx, s*f(x) - dy)
// and of the (f_r - 1) term of the Kato cone differential.
inline std::atomic<int> cone_sign{1};

// Mod-p product on pairs (a_i + a_{i+1}) (b_j + b_{j+1}):
//   default:     (a_i b_j) + (a_{i+1} b_j + (-1)^i a_i b_{j+1})
//   alternative: (a_i b_j) + ((-1)^j a_{i+1} b_j + a_i b_{j+1})
inline std::atomic<bool> modp_product_alt{false};

inline int sign(long e) { return (e % 2 == 0) ? 1 : -1; }

// Exponent of the sign in rho; g(m) = g(m-1) + m - 1 with g(0) = 0.
inline long g(long m) { return m * (m - 1) / 2; }

class ScopedConventions {
public:
    ScopedConventions(int cone, bool alt)
        : old_cone_(cone_sign.load()), old_alt_(modp_product_alt.load()) {
        cone_sign = cone;
        modp_product_alt = alt;
    }
    ~ScopedConventions() {
        cone_sign = old_cone_;
        modp_product_alt = old_alt_;
    }
    ScopedConventions(const ScopedConventions&) = delete;
    ScopedConventions& operator=(const ScopedConventions&) = delete;

private:
    int old_cone_;
    bool old_alt_;
};

}  // namespace artifact::conv
