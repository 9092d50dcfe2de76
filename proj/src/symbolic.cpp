#include "fatbound/symbolic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "fatbound/error.hpp"

namespace fatbound {

SymbolSeq::SymbolSeq(std::vector<Digit> preperiod, std::vector<Digit> period, int d)
    : pre_(std::move(preperiod)), per_(std::move(period)), d_(d) {
    if (d_ < 2) throw std::invalid_argument("SymbolSeq: branch count must be >= 2");
    if (per_.empty()) throw std::invalid_argument("SymbolSeq: period must be nonempty");
    auto bad = [this](Digit x) { return x >= d_; };
    if (std::any_of(pre_.begin(), pre_.end(), bad) || std::any_of(per_.begin(), per_.end(), bad))
        throw std::invalid_argument("SymbolSeq: digit out of range");
    canonicalize();
}

void SymbolSeq::canonicalize() {
    // Primitive period.
    const std::size_t p = per_.size();
    for (std::size_t q = 1; q < p; ++q) {
        if (p % q != 0) continue;
        bool repeats = true;
        for (std::size_t i = q; i < p && repeats; ++i) repeats = per_[i] == per_[i - q];
        if (repeats) {
            per_.resize(q);
            break;
        }
    }
    // Fold the preperiod tail into the period phase.
    while (!pre_.empty() && pre_.back() == per_.back()) {
        pre_.pop_back();
        std::rotate(per_.rbegin(), per_.rbegin() + 1, per_.rend());
    }
}

SymbolSeq SymbolSeq::parse(std::string_view text, int d) {
    const auto bar = text.find('|');
    if (bar == std::string_view::npos || text.find('|', bar + 1) != std::string_view::npos)
        throw std::invalid_argument("SymbolSeq::parse: expected 'pre|per', got '" + std::string(text) + "'");
    auto digits = [&](std::string_view part) {
        std::vector<Digit> out;
        out.reserve(part.size());
        for (char c : part) {
            if (c < '0' || c > '9')
                throw std::invalid_argument("SymbolSeq::parse: bad digit in '" + std::string(text) + "'");
            out.push_back(static_cast<Digit>(c - '0'));
        }
        return out;
    };
    return SymbolSeq(digits(text.substr(0, bar)), digits(text.substr(bar + 1)), d);
}

std::vector<Digit> SymbolSeq::prefix(std::size_t n) const {
    std::vector<Digit> out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = (*this)[k];
    return out;
}

std::string SymbolSeq::to_string() const {
    std::string s;
    s.reserve(pre_.size() + per_.size() + 1);
    for (Digit x : pre_) s.push_back(static_cast<char>('0' + x));
    s.push_back('|');
    for (Digit x : per_) s.push_back(static_cast<char>('0' + x));
    return s;
}

std::optional<std::size_t> first_difference(const SymbolSeq& a, const SymbolSeq& b) {
    if (a.d() != b.d()) throw std::invalid_argument("first_difference: mismatched alphabets");
    // Agreement on this many digits implies equality of the infinite words.
    const std::size_t horizon = std::max(a.preperiod().size(), b.preperiod().size()) +
                                std::lcm(a.period().size(), b.period().size());
    for (std::size_t k = 0; k < horizon; ++k)
        if (a[k] != b[k]) return k;
    return std::nullopt;
}

std::strong_ordering lex_compare(const SymbolSeq& a, const SymbolSeq& b) {
    if (a.d() != b.d()) throw std::invalid_argument("lex_compare: mismatched alphabets");
    const auto n = first_difference(a, b);
    if (!n) return std::strong_ordering::equal;
    return a[*n] <=> b[*n];
}

SymbolSeq shift(const SymbolSeq& a) {
    if (!a.preperiod().empty())
        return SymbolSeq({a.preperiod().begin() + 1, a.preperiod().end()}, a.period(), a.d());
    std::vector<Digit> per = a.period();
    std::rotate(per.begin(), per.begin() + 1, per.end());
    return SymbolSeq({}, std::move(per), a.d());
}

SymbolSeq concat(Digit i, const SymbolSeq& a) {
    if (i >= a.d()) throw std::invalid_argument("concat: digit out of range");
    std::vector<Digit> pre;
    pre.reserve(a.preperiod().size() + 1);
    pre.push_back(i);
    pre.insert(pre.end(), a.preperiod().begin(), a.preperiod().end());
    return SymbolSeq(std::move(pre), a.period(), a.d());
}

double branch_compose(std::size_t k, const SymbolSeq& a, double x) {
    double y = x;
    for (std::size_t j = 0; j <= k; ++j) y = inverse_branch(a[j], y, a.d());
    return y;
}

double psi(std::size_t k, const SymbolSeq& a) {
    if (a.d() != 2) throw UnsupportedError("psi: only defined for d = 2");
    // a_j carries weight 2^{j-k-1}; summing small weights first.
    double s = 0.0;
    for (std::size_t j = 0; j <= k; ++j)
        s += a[j] * std::ldexp(1.0, static_cast<int>(j) - static_cast<int>(k) - 1);
    return s;
}

double z_value(const SymbolSeq& a, double lambda) {
    if (a.d() != 2) throw UnsupportedError("z_value: only defined for d = 2");
    if (!(lambda > 0.0 && lambda < 1.0)) throw std::invalid_argument("z_value: lambda must lie in (0,1)");
    const double r = lambda / 2.0;
    double head = 0.0;
    double w = 1.0;
    for (Digit x : a.preperiod()) {
        head += w * x;
        w *= r;
    }
    double cycle = 0.0;
    double wc = 1.0;
    for (Digit x : a.period()) {
        cycle += wc * x;
        wc *= r;
    }
    return head + w * cycle / (1.0 - wc);
}

}  // namespace fatbound
