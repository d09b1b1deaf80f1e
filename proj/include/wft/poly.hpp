#pragma once

#include <vector>

namespace wft {

// Dense polynomial sum_k c[k] s^k in a local variable s.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<double> coeffs);

    const std::vector<double>& coeffs() const { return c_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero(double tol = 0.0) const;

    double operator()(double s) const;
    // Value of the k-th derivative at s.
    double derivative_at(double s, int k) const;

    Poly derivative() const;
    // Antiderivative vanishing at s = 0.
    Poly integral() const;
    // p(s + h) as a polynomial in s.
    Poly shifted(double h) const;

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(double a) const;
    Poly& add_constant(double a);

private:
    void trim();
    std::vector<double> c_;
};

// Real roots of p in the closed interval [a, b], sorted, found by splitting
// at the roots of p' and bisecting each monotone stretch to full precision.
// An identically zero polynomial yields no roots.
std::vector<double> real_roots(const Poly& p, double a, double b);

} // namespace wft
