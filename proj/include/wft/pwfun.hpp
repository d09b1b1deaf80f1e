#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "wft/gauge.hpp"

namespace wft {

// Step function with breakpoints x_0 < ... < x_n and value v_i on
// (x_{i-1}, x_i); zero outside [x_0, x_n].
class PiecewiseConstantFn {
public:
    PiecewiseConstantFn() = default;
    PiecewiseConstantFn(std::vector<double> breakpoints, std::vector<double> values);

    const std::vector<double>& breakpoints() const { return x_; }
    const std::vector<double>& values() const { return v_; }
    std::size_t pieces() const { return v_.size(); }
    bool empty() const { return v_.empty(); }

    // Value on the open piece containing x (right-continuous at breakpoints).
    double operator()(double x) const;
    double integral() const;
    double sup_norm() const;
    double min_value() const;
    double max_value() const;
    double support_length() const;

    // Merges equal neighbours, drops zero-width pieces and zero end pieces.
    PiecewiseConstantFn normalized() const;

    PiecewiseConstantFn positive_part() const;
    PiecewiseConstantFn negative_part() const; // max(-u, 0)

    std::string to_text() const;
    static PiecewiseConstantFn from_text(const std::string& text);
    std::string to_csv() const;
    static PiecewiseConstantFn from_csv(const std::string& text);

private:
    std::vector<double> x_;
    std::vector<double> v_;
};

double total_variation(const PiecewiseConstantFn& u);
// Total variation of a plain sequence of samples.
double total_variation(const std::vector<double>& samples);

struct UndulationNode {
    double lo = 0.0, hi = 0.0;   // support interval
    double height = 0.0;
    double peak = 0.0;           // leftmost maximiser
    PiecewiseConstantFn profile;
    int parent = -1;
};

struct UndulationTree {
    std::vector<UndulationNode> nodes;
    std::vector<double> heights() const;
};

UndulationTree decompose_undulations(const PiecewiseConstantFn& u);

enum class VariationSign { Both, Positive, Negative };

// sup over subsequences of sum Phi(|increment|) for a sample sequence.
double gauge_tv_samples(const std::vector<double>& samples, const Gauge& phi,
                        VariationSign sign = VariationSign::Both);
double gauge_tv(const PiecewiseConstantFn& u, const Gauge& phi);
double signed_gauge_tv(const PiecewiseConstantFn& u, const Gauge& phi, VariationSign sign);

std::size_t count_undulations_above(const UndulationTree& tree, double h);

bool majorization_bound(const std::vector<double>& a, const std::vector<double>& b, const Gauge& phi);

} // namespace wft
