#pragma once

#include <stdexcept>

namespace maass {

// Modular weight k stored as 2k.  Half-integral weights carry lambda with
// k = lambda + 1/2; lambda parity drives the theta-multiplier character.
struct weight {
    int twice_k = 0;

    static weight integral(int k) { return weight{2 * k}; }
    static weight half(int lambda) { return weight{2 * lambda + 1}; }
    static weight from_twice(int tk) { return weight{tk}; }

    bool is_half() const { return (twice_k & 1) != 0; }

    int integer_k() const {
        if (is_half()) throw std::logic_error("weight: not integral");
        return twice_k / 2;
    }

    // defined only for half-integral weights; twice_k = 2*lambda + 1
    int lambda() const {
        if (!is_half()) throw std::logic_error("weight: lambda undefined for integral weight");
        return (twice_k - 1) / 2;
    }

    double k() const { return twice_k / 2.0; }

    bool operator==(const weight&) const = default;
};

}  // namespace maass
