#include "phasewave/observable.hpp"

#include "phasewave/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

namespace phasewave {

namespace {

double int_pow(double x, int n) {
    double r = 1.0;
    for (int k = 0; k < n; ++k) r *= x;
    return r;
}

} // namespace

ObservableFn ObservableFn::constant(double c) {
    return monomial(c, 0, 0);
}

ObservableFn ObservableFn::coordinate_q() {
    return monomial(1.0, 1, 0);
}

ObservableFn ObservableFn::coordinate_p() {
    return monomial(1.0, 0, 1);
}

ObservableFn ObservableFn::monomial(double coeff, int q_pow, int p_pow) {
    if (q_pow < 0 || p_pow < 0)
        throw ConfigError("observable monomial powers must be non-negative");
    ObservableFn f;
    f.is_polynomial_ = true;
    if (coeff != 0.0) f.terms_.push_back({coeff, q_pow, p_pow});
    return f;
}

ObservableFn ObservableFn::from_callable(std::function<double(double, double)> fn) {
    ObservableFn f;
    f.is_polynomial_ = false;
    f.fn_ = std::move(fn);
    return f;
}

void ObservableFn::merge_terms() {
    std::map<std::pair<int, int>, double> acc;
    for (const Term& t : terms_) acc[{t.q_pow, t.p_pow}] += t.coeff;
    terms_.clear();
    for (const auto& [powers, coeff] : acc) {
        if (coeff != 0.0) terms_.push_back({coeff, powers.first, powers.second});
    }
}

ObservableFn ObservableFn::operator+(const ObservableFn& other) const {
    if (is_polynomial_ && other.is_polynomial_) {
        ObservableFn out;
        out.terms_ = terms_;
        out.terms_.insert(out.terms_.end(), other.terms_.begin(), other.terms_.end());
        out.merge_terms();
        return out;
    }
    ObservableFn a = *this;
    ObservableFn b = other;
    return from_callable([a, b](double q, double p) { return a(q, p) + b(q, p); });
}

ObservableFn ObservableFn::operator*(const ObservableFn& other) const {
    if (is_polynomial_ && other.is_polynomial_) {
        ObservableFn out;
        for (const Term& s : terms_) {
            for (const Term& t : other.terms_) {
                out.terms_.push_back({s.coeff * t.coeff, s.q_pow + t.q_pow, s.p_pow + t.p_pow});
            }
        }
        out.merge_terms();
        return out;
    }
    ObservableFn a = *this;
    ObservableFn b = other;
    return from_callable([a, b](double q, double p) { return a(q, p) * b(q, p); });
}

ObservableFn ObservableFn::operator*(double scale) const {
    return (*this) * constant(scale);
}

double ObservableFn::operator()(double q, double p) const {
    if (!is_polynomial_) return fn_(q, p);
    double sum = 0.0;
    for (const Term& t : terms_) sum += t.coeff * int_pow(q, t.q_pow) * int_pow(p, t.p_pow);
    return sum;
}

} // namespace phasewave
