#include "th/field.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace th {

namespace {

bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

}  // namespace

FieldCtx FieldCtx::build(int q, int cap) {
    if (q == 2) {
        throw EvenCharacteristicError("q = 2 rejected, odd characteristic required");
    }
    if (!is_prime(q)) {
        throw NonPrimeError("q = " + std::to_string(q) + " is not prime");
    }
    if (q > cap) {
        throw CapExceededError("q = " + std::to_string(q) + " exceeds cap " + std::to_string(cap));
    }

    FieldCtx ctx;
    ctx.q_ = q;

    std::vector<bool> is_square(q, false);
    for (int x = 1; x < q; ++x) is_square[(x * x) % q] = true;
    for (int d = 2; d < q; ++d) {
        if (!is_square[d]) {
            ctx.delta_ = d;
            break;
        }
    }

    ctx.inv_base_.assign(q, 0);
    for (int x = 1; x < q; ++x) {
        for (int y = 1; y < q; ++y) {
            if ((x * y) % q == 1) {
                ctx.inv_base_[x] = y;
                break;
            }
        }
    }

    // Scan (a, b) pairs in lexicographic order for the first generator of E^x.
    const int m = q * q - 1;
    for (int a = 0; a < q && ctx.pow_ext_.empty(); ++a) {
        for (int b = 0; b < q; ++b) {
            if (a == 0 && b == 0) continue;
            ExtElem g{a, b};
            std::vector<ExtElem> powers;
            powers.push_back({1, 0});
            ExtElem acc{1, 0};
            int order = 0;
            for (int t = 1; t <= m; ++t) {
                acc = ctx.emul(acc, g);
                if (acc == ExtElem{1, 0}) {
                    order = t;
                    break;
                }
                powers.push_back(acc);
            }
            if (order == m) {
                ctx.pow_ext_ = std::move(powers);
                break;
            }
        }
    }

    ctx.dlog_ext_.assign(q * q, -1);
    for (int t = 0; t < m; ++t) {
        const ExtElem z = ctx.pow_ext_[t];
        ctx.dlog_ext_[z.a * q + z.b] = t;
    }

    const int gF = ctx.norm(ctx.pow_ext_[1]);
    ctx.pow_base_.assign(q - 1, 0);
    ctx.dlog_base_.assign(q, -1);
    int acc = 1;
    for (int t = 0; t < q - 1; ++t) {
        ctx.pow_base_[t] = acc;
        ctx.dlog_base_[acc] = t;
        acc = (acc * gF) % q;
    }

    return ctx;
}

int FieldCtx::inv(int x) const {
    x %= q_;
    if (x == 0) throw ZeroElementError("inverse of zero in F");
    return inv_base_[x];
}

ExtElem FieldCtx::emul(ExtElem x, ExtElem y) const {
    const int a = add(mul(x.a, y.a), mul(delta_, mul(x.b, y.b)));
    const int b = add(mul(x.a, y.b), mul(x.b, y.a));
    return {a, b};
}

ExtElem FieldCtx::einv(ExtElem x) const {
    const int t = dlog_ext(x);
    const int m = ext_group_order();
    return pow_ext_[(m - t) % m];
}

int FieldCtx::dlog_ext(ExtElem z) const {
    const int t = dlog_ext_[z.a * q_ + z.b];
    if (t < 0) throw ZeroElementError("discrete log of zero in E");
    return t;
}

int FieldCtx::dlog_base(int x) const {
    const int t = dlog_base_[x % q_];
    if (t < 0) throw ZeroElementError("discrete log of zero in F");
    return t;
}

ExtElem FieldCtx::ext_power(int t) const {
    const int m = ext_group_order();
    return pow_ext_[((t % m) + m) % m];
}

int FieldCtx::base_power(int t) const {
    const int m = base_group_order();
    return pow_base_[((t % m) + m) % m];
}

CharLabel FieldCtx::ext_char(int j) const {
    const int m = ext_group_order();
    return {m, ((j % m) + m) % m};
}

CharLabel FieldCtx::base_char(int i) const {
    const int m = base_group_order();
    return {m, ((i % m) + m) % m};
}

cplx FieldCtx::eval(CharLabel chi, ExtElem z) const {
    if (chi.modulus == base_group_order()) {
        if (!in_base(z)) {
            throw DomainMismatchError("base character applied outside F^x");
        }
        return eval_base(chi, z.a);
    }
    if (chi.modulus != ext_group_order()) {
        throw DomainMismatchError("character modulus does not match this field tower");
    }
    const int t = dlog_ext(z);
    const long long phase = static_cast<long long>(chi.index) * t % chi.modulus;
    return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(phase) / chi.modulus);
}

cplx FieldCtx::eval_base(CharLabel chi, int x) const {
    if (chi.modulus != base_group_order()) {
        throw DomainMismatchError("character modulus does not match F^x");
    }
    const int t = dlog_base(x);
    const long long phase = static_cast<long long>(chi.index) * t % chi.modulus;
    return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(phase) / chi.modulus);
}

CharLabel FieldCtx::restriction(CharLabel Phi) const {
    if (Phi.modulus == base_group_order()) return Phi;
    if (Phi.modulus != ext_group_order()) {
        throw DomainMismatchError("restriction expects a character of E^x");
    }
    return base_char(Phi.index % base_group_order());
}

CharLabel FieldCtx::frobenius_twist(CharLabel Phi) const {
    if (Phi.modulus != ext_group_order()) {
        throw DomainMismatchError("Frobenius twist expects a character of E^x");
    }
    return ext_char(static_cast<int>(static_cast<long long>(Phi.index) * q_ % Phi.modulus));
}

CharLabel FieldCtx::norm_pullback(CharLabel alpha) const {
    if (alpha.modulus != base_group_order()) {
        throw DomainMismatchError("norm pullback expects a character of F^x");
    }
    return ext_char(alpha.index * (q_ + 1));
}

CharLabel FieldCtx::product(CharLabel x, CharLabel y) const {
    if (x.modulus != y.modulus) {
        throw DomainMismatchError("character product needs matching moduli");
    }
    return {x.modulus, (x.index + y.index) % x.modulus};
}

CharLabel FieldCtx::inverse_char(CharLabel chi) const {
    return {chi.modulus, (chi.modulus - chi.index) % chi.modulus};
}

bool FieldCtx::is_frobenius_fixed(CharLabel Phi) const {
    if (Phi.modulus != ext_group_order()) {
        throw DomainMismatchError("Frobenius fixedness applies to characters of E^x");
    }
    return Phi.index % (q_ + 1) == 0;
}

}  // namespace th
