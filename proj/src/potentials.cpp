#include "fatbound/potentials.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace fatbound {

namespace {

constexpr int kNormGrid = 4096;
constexpr double kFdStep = 1e-6;

std::vector<double> poly_derivative(const std::vector<double>& c) {
    if (c.size() <= 1) return {0.0};
    std::vector<double> out(c.size() - 1);
    for (std::size_t i = 1; i < c.size(); ++i) out[i - 1] = static_cast<double>(i) * c[i];
    return out;
}

double horner(const std::vector<double>& c, double x) {
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
}

std::vector<double> poly_mul(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> out(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

double parse_double(std::string_view s) {
    // std::from_chars for double is available in libstdc++ 11.
    double v = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    while (first < last && *first == ' ') ++first;
    while (last > first && (last[-1] == ' ' || last[-1] == '\r')) --last;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) throw std::invalid_argument("bad number '" + std::string(s) + "'");
    return v;
}

std::vector<double> parse_list(std::string_view s) {
    std::vector<double> out;
    if (s.empty()) return out;
    std::size_t start = 0;
    while (true) {
        auto comma = s.find(',', start);
        out.push_back(parse_double(s.substr(start, comma == std::string_view::npos ? s.npos : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

}  // namespace

Potential::Potential(std::string name, RealFn value, std::optional<RealFn> deriv1,
                     std::optional<RealFn> deriv2, bool symmetric)
    : name_(std::move(name)),
      value_(std::move(value)),
      deriv1_(std::move(deriv1)),
      deriv2_(std::move(deriv2)),
      symmetric_(symmetric) {
    for (int j = 0; j < kNormGrid; ++j) {
        const double x = static_cast<double>(j) / kNormGrid;
        sup_norm_ = std::max(sup_norm_, std::abs((*this)(x)));
    }
    lipschitz_ = deriv_sup_norm(*this, kNormGrid);
}

double Potential::deriv1(double x) const {
    if (deriv1_) return (*deriv1_)(wrap_unit(x));
    return ((*this)(x + kFdStep) - (*this)(x - kFdStep)) / (2.0 * kFdStep);
}

double Potential::deriv2(double x) const {
    if (deriv2_) return (*deriv2_)(wrap_unit(x));
    constexpr double h = 1e-4;
    return ((*this)(x + h) - 2.0 * (*this)(x) + (*this)(x - h)) / (h * h);
}

Potential Potential::with_coeffs(std::vector<double> c) const {
    Potential p = *this;
    p.coeffs_ = std::move(c);
    return p;
}

Potential Potential::with_symmetric(bool s) const {
    Potential p = *this;
    p.symmetric_ = s;
    return p;
}

Potential polynomial(std::vector<double> coeffs, std::string name) {
    if (coeffs.empty()) throw std::invalid_argument("polynomial: need at least one coefficient");
    auto d1 = poly_derivative(coeffs);
    auto d2 = poly_derivative(d1);
    Potential p(std::move(name), [c = coeffs](double x) { return horner(c, x); },
                RealFn([c = d1](double x) { return horner(c, x); }),
                RealFn([c = d2](double x) { return horner(c, x); }));
    return p.with_coeffs(std::move(coeffs));
}

Potential quad_sym() {
    return polynomial({-0.25, 1.0, -1.0}, "quad_sym").with_symmetric(true);
}

Potential tent() {
    return Potential(
        "tent", [](double x) { return x < 0.5 ? 6.0 * x - 3.0 : -6.0 * x + 3.0; },
        RealFn([](double x) { return (x > 0.0 && x <= 0.5) ? 6.0 : -6.0; }),
        RealFn([](double) { return 0.0; }), true);
}

Potential cosine() {
    using std::numbers::pi;
    return Potential(
        "cosine", [](double x) { return -0.5 - 0.5 * std::cos(2.0 * pi * x); },
        RealFn([](double x) { return pi * std::sin(2.0 * pi * x); }),
        RealFn([](double x) { return 2.0 * pi * pi * std::cos(2.0 * pi * x); }), true);
}

Potential sine() {
    using std::numbers::pi;
    return Potential(
        "sine", [](double x) { return std::sin(2.0 * pi * x); },
        RealFn([](double x) { return 2.0 * pi * std::cos(2.0 * pi * x); }),
        RealFn([](double x) { return -4.0 * pi * pi * std::sin(2.0 * pi * x); }));
}

Potential quad_eps(double eps, double drift) {
    // psi(x) = (x - x^2)(1 + 3x + 9/2 x^2 + 9/2 x^3 + 27/8 x^4 + 81/40 x^5)
    const std::vector<double> bump =
        poly_mul({0.0, 1.0, -1.0}, {1.0, 3.0, 4.5, 4.5, 27.0 / 8.0, 81.0 / 40.0});
    std::vector<double> c(bump.size(), 0.0);
    for (std::size_t i = 0; i < bump.size(); ++i) c[i] = eps * bump[i];
    c[0] += -0.25 - drift;
    c[1] += 1.0;
    c[2] += -1.0;
    return polynomial(std::move(c), "quad_eps");
}

Potential quad_drift() {
    // -(1.010 x - 0.455)^2 expanded.
    constexpr double a = 1.010;
    constexpr double b = 0.455;
    return polynomial({-b * b, 2.0 * a * b, -a * a}, "quad_drift");
}

Potential constant(double c) {
    return polynomial({c}, "const");
}

Potential table(std::vector<double> xs, std::vector<double> values, std::string name) {
    if (xs.size() != values.size() || xs.size() < 2)
        throw std::invalid_argument("table: need at least two (x, value) rows");
    std::vector<std::size_t> order(xs.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](auto i, auto j) { return xs[i] < xs[j]; });
    std::vector<double> sx, sv;
    for (auto i : order) {
        const double x = xs[i];
        if (x < 0.0 || x >= 1.0) throw std::invalid_argument("table: x values must lie in [0,1)");
        if (!sx.empty() && x == sx.back()) throw std::invalid_argument("table: duplicate x value");
        sx.push_back(x);
        sv.push_back(values[i]);
    }
    auto fn = [sx = std::move(sx), sv = std::move(sv)](double x) {
        // Periodic linear interpolation; the last segment wraps to x0 + 1.
        auto it = std::upper_bound(sx.begin(), sx.end(), x);
        std::size_t hi = static_cast<std::size_t>(it - sx.begin());
        double xl, xr, vl, vr;
        if (hi == 0) {
            xl = sx.back() - 1.0, vl = sv.back(), xr = sx.front(), vr = sv.front();
        } else if (hi == sx.size()) {
            xl = sx.back(), vl = sv.back(), xr = sx.front() + 1.0, vr = sv.front();
        } else {
            xl = sx[hi - 1], vl = sv[hi - 1], xr = sx[hi], vr = sv[hi];
        }
        const double t = (x - xl) / (xr - xl);
        return vl + t * (vr - vl);
    };
    return Potential(std::move(name), std::move(fn));
}

Potential table_from_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("table: cannot open '" + path + "'");
    std::vector<double> xs, vs;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        auto comma = line.find(',');
        if (comma == std::string::npos) throw std::invalid_argument("table: expected 'x,value' rows in " + path);
        try {
            const double x = parse_double(std::string_view(line).substr(0, comma));
            const double v = parse_double(std::string_view(line).substr(comma + 1));
            xs.push_back(x);
            vs.push_back(v);
        } catch (const std::invalid_argument&) {
            if (!first) throw;
        }
        first = false;
    }
    return table(std::move(xs), std::move(vs), "table:" + path);
}

Potential builtin(std::string_view name, const std::vector<double>& params) {
    auto expect = [&](std::size_t n) {
        if (params.size() != n)
            throw std::invalid_argument("potential '" + std::string(name) + "' expects " + std::to_string(n) +
                                        " parameter(s), got " + std::to_string(params.size()));
    };
    if (name == "poly") {
        if (params.empty()) throw std::invalid_argument("potential 'poly' needs coefficients");
        return polynomial(params);
    }
    if (name == "quad_sym") {
        expect(0);
        return quad_sym();
    }
    if (name == "tent") {
        expect(0);
        return tent();
    }
    if (name == "cosine") {
        expect(0);
        return cosine();
    }
    if (name == "sine") {
        expect(0);
        return sine();
    }
    if (name == "quad_eps") {
        expect(2);
        return quad_eps(params[0], params[1]);
    }
    if (name == "quad_drift") {
        expect(0);
        return quad_drift();
    }
    if (name == "const") {
        expect(1);
        return constant(params[0]);
    }
    throw std::invalid_argument("unknown potential '" + std::string(name) + "'");
}

Potential parse_potential(std::string_view spec) {
    const auto colon = spec.find(':');
    const auto name = spec.substr(0, colon);
    if (colon == std::string_view::npos) return builtin(name);
    const auto rest = spec.substr(colon + 1);
    if (name == "table") return table_from_csv(std::string(rest));
    return builtin(name, parse_list(rest));
}

double deriv_sup_norm(const Potential& a, int grid) {
    double m = 0.0;
    for (int j = 0; j < grid; ++j) m = std::max(m, std::abs(a.deriv1(static_cast<double>(j) / grid)));
    return m;
}

}  // namespace fatbound
