#pragma once

#include <functional>
#include <vector>

namespace phasewave {

// Real-valued function of a phase-space point, used for expectation values.
// Two flavors: a symbolic polynomial in (q, p), closed under + and *, or an
// opaque callable hook. Polynomials evaluate exactly; callables are treated
// as black boxes and only checked for finiteness at use sites.
class ObservableFn {
public:
    struct Term {
        double coeff = 0.0;
        int q_pow = 0;
        int p_pow = 0;
    };

    ObservableFn() = default;

    static ObservableFn constant(double c);
    static ObservableFn coordinate_q();
    static ObservableFn coordinate_p();
    static ObservableFn monomial(double coeff, int q_pow, int p_pow);
    static ObservableFn from_callable(std::function<double(double, double)> fn);

    ObservableFn operator+(const ObservableFn& other) const;
    ObservableFn operator*(const ObservableFn& other) const;
    ObservableFn operator*(double scale) const;

    double operator()(double q, double p) const;

    bool is_polynomial() const { return is_polynomial_; }
    const std::vector<Term>& terms() const { return terms_; }

private:
    bool is_polynomial_ = true;
    std::vector<Term> terms_;                      // polynomial flavor
    std::function<double(double, double)> fn_;     // callable flavor

    void merge_terms();
};

} // namespace phasewave
