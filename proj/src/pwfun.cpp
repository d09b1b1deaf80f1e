#include "wft/pwfun.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "wft/error.hpp"

namespace wft {

PiecewiseConstantFn::PiecewiseConstantFn(std::vector<double> breakpoints, std::vector<double> values)
    : x_(std::move(breakpoints)), v_(std::move(values)) {
    if (v_.empty()) {
        if (x_.size() > 1) throw InvalidArgument("step function without values needs at most one breakpoint");
        x_.clear();
        return;
    }
    if (x_.size() != v_.size() + 1) throw InvalidArgument("step function needs one more breakpoint than values");
    for (std::size_t i = 1; i < x_.size(); ++i)
        if (!(x_[i] > x_[i - 1])) throw InvalidArgument("breakpoints must be strictly increasing");
}

double PiecewiseConstantFn::operator()(double x) const {
    if (v_.empty() || x < x_.front() || x >= x_.back()) return 0.0;
    auto it = std::upper_bound(x_.begin(), x_.end(), x);
    return v_[static_cast<std::size_t>(it - x_.begin()) - 1];
}

double PiecewiseConstantFn::integral() const {
    double s = 0.0;
    for (std::size_t i = 0; i < v_.size(); ++i) s += v_[i] * (x_[i + 1] - x_[i]);
    return s;
}

double PiecewiseConstantFn::sup_norm() const {
    double m = 0.0;
    for (double v : v_) m = std::max(m, std::abs(v));
    return m;
}

double PiecewiseConstantFn::min_value() const {
    double m = 0.0;
    for (double v : v_) m = std::min(m, v);
    return m;
}

double PiecewiseConstantFn::max_value() const {
    double m = 0.0;
    for (double v : v_) m = std::max(m, v);
    return m;
}

double PiecewiseConstantFn::support_length() const { return v_.empty() ? 0.0 : x_.back() - x_.front(); }

PiecewiseConstantFn PiecewiseConstantFn::normalized() const {
    std::vector<double> x, v;
    for (std::size_t i = 0; i < v_.size(); ++i) {
        if (!v.empty() && v.back() == v_[i]) {
            x.back() = x_[i + 1];
            continue;
        }
        if (x.empty()) x.push_back(x_[i]);
        v.push_back(v_[i]);
        x.push_back(x_[i + 1]);
    }
    std::size_t b = 0, e = v.size();
    while (b < e && v[b] == 0.0) ++b;
    while (e > b && v[e - 1] == 0.0) --e;
    if (b == e) return {};
    return PiecewiseConstantFn(std::vector<double>(x.begin() + b, x.begin() + e + 1),
                               std::vector<double>(v.begin() + b, v.begin() + e));
}

PiecewiseConstantFn PiecewiseConstantFn::positive_part() const {
    std::vector<double> v = v_;
    for (double& a : v) a = std::max(a, 0.0);
    return PiecewiseConstantFn(x_, v).normalized();
}

PiecewiseConstantFn PiecewiseConstantFn::negative_part() const {
    std::vector<double> v = v_;
    for (double& a : v) a = std::max(-a, 0.0);
    return PiecewiseConstantFn(x_, v).normalized();
}

std::string PiecewiseConstantFn::to_text() const {
    std::ostringstream os;
    os << std::setprecision(17);
    for (std::size_t i = 0; i < v_.size(); ++i) os << x_[i] << ' ' << v_[i] << '\n';
    if (!x_.empty()) os << x_.back() << '\n';
    return os.str();
}

PiecewiseConstantFn PiecewiseConstantFn::from_text(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    std::vector<double> x, v;
    bool terminal = false;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        double a, b;
        if (!(ls >> a)) continue;
        if (terminal) throw ParseError("line " + std::to_string(lineno) + ": data after terminal breakpoint");
        x.push_back(a);
        if (ls >> b)
            v.push_back(b);
        else
            terminal = true;
    }
    if (!v.empty() && !terminal) throw ParseError("missing terminal breakpoint");
    return PiecewiseConstantFn(std::move(x), std::move(v));
}

std::string PiecewiseConstantFn::to_csv() const {
    std::ostringstream os;
    os << std::setprecision(17) << "x,value\n";
    for (std::size_t i = 0; i < v_.size(); ++i) os << x_[i] << ',' << v_[i] << '\n';
    if (!x_.empty()) os << x_.back() << ",\n";
    return os.str();
}

PiecewiseConstantFn PiecewiseConstantFn::from_csv(const std::string& text) {
    std::istringstream is(text);
    std::string line, out;
    bool header = true;
    while (std::getline(is, line)) {
        if (header) {
            header = false;
            if (line.find_first_not_of("0123456789+-.eE, \t\r") != std::string::npos) continue;
        }
        std::replace(line.begin(), line.end(), ',', ' ');
        out += line + '\n';
    }
    return from_text(out);
}

// ---------------------------------------------------------------------------

double total_variation(const std::vector<double>& s) {
    double tv = 0.0;
    for (std::size_t i = 1; i < s.size(); ++i) tv += std::abs(s[i] - s[i - 1]);
    return tv;
}

namespace {

std::vector<double> padded(const PiecewiseConstantFn& u) {
    std::vector<double> s;
    s.reserve(u.pieces() + 2);
    s.push_back(0.0);
    for (double v : u.values()) s.push_back(v);
    s.push_back(0.0);
    return s;
}

} // namespace

double total_variation(const PiecewiseConstantFn& u) { return total_variation(padded(u)); }

std::vector<double> UndulationTree::heights() const {
    std::vector<double> h;
    for (const auto& n : nodes) h.push_back(n.height);
    return h;
}

UndulationTree decompose_undulations(const PiecewiseConstantFn& u) {
    for (double v : u.values())
        if (v < 0.0) throw NegativeInput("undulation decomposition needs a nonnegative function");
    UndulationTree tree;
    std::vector<double> r = u.values();
    const auto& x = u.breakpoints();
    const std::size_t n = r.size();
    std::vector<double> prof(n);
    while (true) {
        std::size_t jstar = n;
        double mx = 0.0;
        for (std::size_t k = 0; k < n; ++k)
            if (r[k] > mx) {
                mx = r[k];
                jstar = k;
            }
        if (jstar == n) break;
        // Increasing envelope up to the peak, decreasing envelope after it.
        double run = r[jstar];
        for (std::size_t k = jstar + 1; k-- > 0;) {
            run = std::min(run, r[k]);
            prof[k] = run;
        }
        run = r[jstar];
        for (std::size_t k = jstar; k < n; ++k) {
            run = std::min(run, r[k]);
            prof[k] = run;
        }
        std::size_t lo = jstar, hi = jstar;
        while (lo > 0 && prof[lo - 1] > 0.0) --lo;
        while (hi + 1 < n && prof[hi + 1] > 0.0) ++hi;
        UndulationNode node;
        node.lo = x[lo];
        node.hi = x[hi + 1];
        node.height = mx;
        node.peak = x[jstar];
        std::vector<double> pv(prof.begin() + lo, prof.begin() + hi + 1);
        node.profile = PiecewiseConstantFn(std::vector<double>(x.begin() + lo, x.begin() + hi + 2), pv).normalized();
        for (int q = static_cast<int>(tree.nodes.size()) - 1; q >= 0; --q) {
            const auto& c = tree.nodes[static_cast<std::size_t>(q)];
            if (c.lo <= node.lo && node.hi <= c.hi) {
                node.parent = q;
                break;
            }
        }
        for (std::size_t k = lo; k <= hi; ++k) r[k] -= prof[k];
        std::fill(prof.begin(), prof.end(), 0.0);
        tree.nodes.push_back(std::move(node));
    }
    return tree;
}

double gauge_tv_samples(const std::vector<double>& samples, const Gauge& phi, VariationSign sign) {
    // For convex phi with phi(0) = 0 an optimal subsequence only needs the
    // local extrema: an interior point of a monotone run can be pushed to an
    // end of the run (convexity) or dropped (superadditivity).
    std::vector<double> s;
    for (double v : samples)
        if (s.empty() || v != s.back()) s.push_back(v);
    std::vector<double> e;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i == 0 || i + 1 == s.size() || (s[i] - s[i - 1]) * (s[i + 1] - s[i]) < 0.0) e.push_back(s[i]);
    }
    auto term = [&](double d) {
        switch (sign) {
        case VariationSign::Positive: return d > 0.0 ? phi(d) : 0.0;
        case VariationSign::Negative: return d < 0.0 ? phi(-d) : 0.0;
        default: return phi(std::abs(d));
        }
    };
    const std::size_t m = e.size();
    if (m < 2) return 0.0;
    std::vector<double> M(m, 0.0);
    double best = 0.0;
    for (std::size_t i = 1; i < m; ++i) {
        double b = 0.0;
        for (std::size_t j = 0; j < i; ++j) b = std::max(b, M[j] + term(e[i] - e[j]));
        M[i] = b;
        best = std::max(best, b);
    }
    return best;
}

double gauge_tv(const PiecewiseConstantFn& u, const Gauge& phi) {
    return gauge_tv_samples(padded(u), phi, VariationSign::Both);
}

double signed_gauge_tv(const PiecewiseConstantFn& u, const Gauge& phi, VariationSign sign) {
    return gauge_tv_samples(padded(u), phi, sign);
}

std::size_t count_undulations_above(const UndulationTree& tree, double h) {
    if (!(h > 0.0)) throw InvalidArgument("count threshold must be positive");
    std::size_t c = 0;
    for (const auto& n : tree.nodes)
        if (n.height > h) ++c;
    return c;
}

bool majorization_bound(const std::vector<double>& a, const std::vector<double>& b, const Gauge& phi) {
    if (a.size() != b.size()) throw InvalidArgument("majorization needs equal lengths");
    for (const auto* seq : {&a, &b})
        for (std::size_t i = 0; i < seq->size(); ++i) {
            if ((*seq)[i] < 0.0) throw InvalidArgument("majorization needs nonnegative entries");
            if (i > 0 && (*seq)[i] > (*seq)[i - 1]) throw NotSorted("sequence is not nonincreasing");
        }
    double sa = 0.0, sb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sa += a[i];
        sb += b[i];
        if (sa < sb) return false;
    }
    double pa = 0.0, pb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        pa += phi(a[i]);
        pb += phi(b[i]);
    }
    if (pa < pb * (1.0 - 1e-12) - 1e-300) throw Error("majorization side check failed: gauge is not convex increasing");
    return true;
}

} // namespace wft
