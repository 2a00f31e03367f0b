#pragma once

#include <complex>
#include <vector>

#include "th/errors.hpp"

namespace th {

using cplx = std::complex<double>;

// Element a + b*sqrt(delta) of the quadratic extension E over F_q,
// with both coordinates reduced to [0, q).
struct ExtElem {
    int a = 0;
    int b = 0;
    bool operator==(const ExtElem&) const = default;
};

// A multiplicative character, addressed by its dual index: the character
// sends the canonical generator of its group to exp(2*pi*i*index/modulus).
// modulus is q-1 for characters of F^x and q^2-1 for characters of E^x.
struct CharLabel {
    int modulus = 1;
    int index = 0;
    bool operator==(const CharLabel&) const = default;
};

// Arithmetic context for the tower F_q < E = F_q(sqrt(delta)), delta the
// smallest non-square mod q. Fixes canonical generators: gE is the
// lexicographically smallest (a, b) of multiplicative order q^2-1, and
// gF = N(gE) generates F^x. Discrete log tables for both groups are
// precomputed, so character evaluation is O(1). Immutable once built.
class FieldCtx {
public:
    static constexpr int kDefaultCap = 31;

    // Throws NonPrimeError, EvenCharacteristicError or CapExceededError
    // when q is not an odd prime within the cap.
    static FieldCtx build(int q, int cap = kDefaultCap);

    int q() const { return q_; }
    int delta() const { return delta_; }
    ExtElem ext_generator() const { return pow_ext_[1]; }
    int base_generator() const { return pow_base_[1]; }
    int ext_group_order() const { return q_ * q_ - 1; }
    int base_group_order() const { return q_ - 1; }

    // F_q arithmetic on values in [0, q).
    int add(int x, int y) const { return (x + y) % q_; }
    int sub(int x, int y) const { return (x - y + q_) % q_; }
    int mul(int x, int y) const { return (x * y) % q_; }
    int neg(int x) const { return (q_ - x) % q_; }
    int inv(int x) const;  // ZeroElementError on x = 0

    // E arithmetic.
    ExtElem eadd(ExtElem x, ExtElem y) const { return {add(x.a, y.a), add(x.b, y.b)}; }
    ExtElem esub(ExtElem x, ExtElem y) const { return {sub(x.a, y.a), sub(x.b, y.b)}; }
    ExtElem emul(ExtElem x, ExtElem y) const;
    ExtElem eneg(ExtElem x) const { return {neg(x.a), neg(x.b)}; }
    ExtElem einv(ExtElem x) const;  // ZeroElementError on x = 0
    ExtElem from_base(int x) const { return {x % q_, 0}; }
    bool in_base(ExtElem z) const { return z.b == 0; }
    bool is_zero(ExtElem z) const { return z.a == 0 && z.b == 0; }

    // Norm N(z) = a^2 - delta b^2, trace Tr(z) = 2a, Frobenius z -> z^q.
    int norm(ExtElem z) const { return sub(mul(z.a, z.a), mul(delta_, mul(z.b, z.b))); }
    int trace(ExtElem z) const { return add(z.a, z.a); }
    ExtElem frobenius(ExtElem z) const { return {z.a, neg(z.b)}; }

    // Discrete logs with respect to the canonical generators.
    int dlog_ext(ExtElem z) const;  // ZeroElementError on z = 0
    int dlog_base(int x) const;     // ZeroElementError on x = 0
    ExtElem ext_power(int t) const;
    int base_power(int t) const;

    // Character construction. Indices are normalized into [0, modulus).
    CharLabel ext_char(int j) const;
    CharLabel base_char(int i) const;
    CharLabel trivial_ext() const { return ext_char(0); }
    CharLabel trivial_base() const { return base_char(0); }

    // chi(x) = exp(2 pi i * index * dlog(x) / modulus). The element must
    // belong to the character's group: DomainMismatchError when a base
    // character is applied to a point outside F^x, ZeroElementError at 0.
    cplx eval(CharLabel chi, ExtElem z) const;
    cplx eval_base(CharLabel chi, int x) const;

    // Index rules on the dual side, all verified exhaustively in tests.
    CharLabel restriction(CharLabel Phi) const;       // Phi restricted to F^x
    CharLabel frobenius_twist(CharLabel Phi) const;   // Phi composed with Frobenius
    CharLabel norm_pullback(CharLabel alpha) const;   // alpha composed with N
    CharLabel sign_char() const { return base_char((q_ - 1) / 2); }
    CharLabel product(CharLabel x, CharLabel y) const;
    CharLabel inverse_char(CharLabel chi) const;
    bool is_frobenius_fixed(CharLabel Phi) const;

private:
    FieldCtx() = default;

    int q_ = 0;
    int delta_ = 0;
    std::vector<int> inv_base_;        // q entries, index 0 unused
    std::vector<ExtElem> pow_ext_;     // q^2-1 entries
    std::vector<int> pow_base_;        // q-1 entries
    std::vector<int> dlog_ext_;        // q*q entries, -1 at zero
    std::vector<int> dlog_base_;       // q entries, -1 at zero
};

}  // namespace th
