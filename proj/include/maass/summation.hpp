#pragma once

#include <cmath>
#include <complex>

namespace maass {

// Neumaier-compensated accumulator.  Unlike plain Kahan it stays correct
// when an incoming term is larger than the running sum, which happens all
// the time in Bessel/Kummer series before the turning point.
template <typename T>
struct kahan_sum {
    T sum{};
    T comp{};

    void add(T value) {
        T t = sum + value;
        if (std::abs(sum) >= std::abs(value))
            comp += (sum - t) + value;
        else
            comp += (value - t) + sum;
        sum = t;
    }

    kahan_sum& operator+=(T value) {
        add(value);
        return *this;
    }

    T value() const { return sum + comp; }
};

// Same idea for complex values, compensating real and imaginary parts
// independently.
struct kahan_csum {
    kahan_sum<double> re;
    kahan_sum<double> im;

    void add(std::complex<double> z) {
        re.add(z.real());
        im.add(z.imag());
    }

    kahan_csum& operator+=(std::complex<double> z) {
        add(z);
        return *this;
    }

    std::complex<double> value() const { return {re.value(), im.value()}; }
};

}  // namespace maass
