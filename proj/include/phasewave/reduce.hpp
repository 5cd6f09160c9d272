#pragma once

#include <complex>
#include <cstddef>

namespace phasewave {

// Compensated (Kahan-Neumaier) accumulator. Serial and deterministic:
// the same inputs in the same order give the same bits on every run,
// which the output-determinism contract relies on.
class KahanSum {
public:
    void add(double x) {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// Compensated sum of a complex sequence, component-wise.
class KahanSumComplex {
public:
    void add(std::complex<double> z) {
        re_.add(z.real());
        im_.add(z.imag());
    }
    std::complex<double> value() const { return {re_.value(), im_.value()}; }

private:
    KahanSum re_;
    KahanSum im_;
};

} // namespace phasewave
