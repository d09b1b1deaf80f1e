#include "wft/poly.hpp"

#include <algorithm>
#include <cmath>

namespace wft {

Poly::Poly(std::vector<double> coeffs) : c_(std::move(coeffs)) { trim(); }

void Poly::trim() {
    while (!c_.empty() && c_.back() == 0.0) c_.pop_back();
}

bool Poly::is_zero(double tol) const {
    return std::all_of(c_.begin(), c_.end(), [tol](double v) { return std::abs(v) <= tol; });
}

double Poly::operator()(double s) const {
    double r = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * s + *it;
    return r;
}

double Poly::derivative_at(double s, int k) const {
    if (k == 0) return (*this)(s);
    double r = 0.0;
    int n = degree();
    for (int j = n; j >= k; --j) {
        double fall = 1.0;
        for (int i = 0; i < k; ++i) fall *= static_cast<double>(j - i);
        r = r * s + c_[j] * fall;
    }
    return r;
}

Poly Poly::derivative() const {
    std::vector<double> d;
    for (std::size_t k = 1; k < c_.size(); ++k) d.push_back(c_[k] * static_cast<double>(k));
    return Poly(std::move(d));
}

Poly Poly::integral() const {
    std::vector<double> d(c_.size() + 1, 0.0);
    for (std::size_t k = 0; k < c_.size(); ++k) d[k + 1] = c_[k] / static_cast<double>(k + 1);
    return Poly(std::move(d));
}

Poly Poly::shifted(double h) const {
    // Horner composition with (s + h).
    std::vector<double> r;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        std::vector<double> next(r.size() + 1, 0.0);
        for (std::size_t k = 0; k < r.size(); ++k) {
            next[k + 1] += r[k];
            next[k] += r[k] * h;
        }
        next[0] += *it;
        r = std::move(next);
    }
    return Poly(std::move(r));
}

Poly Poly::operator+(const Poly& o) const {
    std::vector<double> r(std::max(c_.size(), o.c_.size()), 0.0);
    for (std::size_t k = 0; k < c_.size(); ++k) r[k] += c_[k];
    for (std::size_t k = 0; k < o.c_.size(); ++k) r[k] += o.c_[k];
    return Poly(std::move(r));
}

Poly Poly::operator-(const Poly& o) const { return *this + o * -1.0; }

Poly Poly::operator*(double a) const {
    std::vector<double> r = c_;
    for (double& v : r) v *= a;
    return Poly(std::move(r));
}

Poly& Poly::add_constant(double a) {
    if (c_.empty()) c_.push_back(0.0);
    c_[0] += a;
    trim();
    return *this;
}

namespace {

double bisect(const Poly& p, double lo, double hi, double plo) {
    for (int it = 0; it < 400; ++it) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        double pm = p(mid);
        if (pm == 0.0) return mid;
        if ((pm < 0.0) == (plo < 0.0)) {
            lo = mid;
            plo = pm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

void roots_rec(const Poly& p, double a, double b, std::vector<double>& out) {
    if (p.degree() <= 0) return;
    if (p.degree() == 1) {
        double r = -p.coeffs()[0] / p.coeffs()[1];
        if (r >= a && r <= b) out.push_back(r);
        return;
    }
    std::vector<double> crit;
    roots_rec(p.derivative(), a, b, crit);
    std::vector<double> pts;
    pts.push_back(a);
    for (double c : crit)
        if (c > a && c < b) pts.push_back(c);
    pts.push_back(b);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        double lo = pts[i], hi = pts[i + 1];
        double plo = p(lo), phi = p(hi);
        if (plo == 0.0) {
            out.push_back(lo);
            continue;
        }
        if (i + 2 == pts.size() && phi == 0.0) {
            out.push_back(hi);
            continue;
        }
        if ((plo < 0.0) != (phi < 0.0) && phi != 0.0) out.push_back(bisect(p, lo, hi, plo));
    }
}

} // namespace

std::vector<double> real_roots(const Poly& p, double a, double b) {
    std::vector<double> out;
    if (a > b || p.is_zero()) return out;
    roots_rec(p, a, b, out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace wft
