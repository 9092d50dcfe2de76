#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fatbound {

using Digit = std::uint8_t;

/**
Eventually periodic word over the alphabet {0, ..., d-1}.

The word is pre[0] pre[1] ... pre[m-1] (per[0] ... per[p-1])^inf. Instances are
always kept canonical: the period is primitive and as much of the preperiod as
possible has been folded into the period. Two objects denoting the same
infinite word therefore compare equal member-wise.

The digit at position k selects the inverse branch applied at step k of a
backward itinerary, tau_i(y) = (y + i) / d.
*/
class SymbolSeq {
public:
    SymbolSeq(std::vector<Digit> preperiod, std::vector<Digit> period, int d = 2);

    /// Parses "pre|per", e.g. "|10" or "0|10". Digits are single characters 0-9.
    static SymbolSeq parse(std::string_view text, int d = 2);

    /// Purely periodic word (per)^inf.
    static SymbolSeq periodic(std::vector<Digit> period, int d = 2) {
        return SymbolSeq({}, std::move(period), d);
    }

    const std::vector<Digit>& preperiod() const noexcept { return pre_; }
    const std::vector<Digit>& period() const noexcept { return per_; }
    int d() const noexcept { return d_; }
    bool is_periodic() const noexcept { return pre_.empty(); }

    /// k-th digit of the infinite word.
    Digit operator[](std::size_t k) const noexcept {
        return k < pre_.size() ? pre_[k] : per_[(k - pre_.size()) % per_.size()];
    }

    /// First `n` digits of the infinite word.
    std::vector<Digit> prefix(std::size_t n) const;

    std::string to_string() const;

    friend bool operator==(const SymbolSeq&, const SymbolSeq&) = default;

private:
    void canonicalize();

    std::vector<Digit> pre_;
    std::vector<Digit> per_;
    int d_;
};

/// Lexicographic order of the two infinite words. Throws on mismatched alphabets.
std::strong_ordering lex_compare(const SymbolSeq& a, const SymbolSeq& b);

/// Index of the first digit where the words differ, or nullopt when equal.
std::optional<std::size_t> first_difference(const SymbolSeq& a, const SymbolSeq& b);

/// Total order used for ordered containers; agrees with lex_compare.
inline bool operator<(const SymbolSeq& a, const SymbolSeq& b) {
    return lex_compare(a, b) == std::strong_ordering::less;
}

/// Drops the first digit (the shift sigma).
SymbolSeq shift(const SymbolSeq& a);

/// Prepends digit i.
SymbolSeq concat(Digit i, const SymbolSeq& a);

/// Inverse branch tau_i(y) = (y + i) / d.
inline double inverse_branch(int i, double y, int d) { return (y + i) / d; }

/// (tau_{a_k} o ... o tau_{a_0})(x), composed iteratively.
double branch_compose(std::size_t k, const SymbolSeq& a, double x);

/// psi_k(a) = a_0 / 2^{k+1} + a_1 / 2^k + ... + a_k / 2 (d = 2 only).
double psi(std::size_t k, const SymbolSeq& a);

/// Z(a) = sum_k (lambda/2)^k a_k in closed form (d = 2 only).
double z_value(const SymbolSeq& a, double lambda);

}  // namespace fatbound
