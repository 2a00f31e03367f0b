#include "th/harmonics.hpp"

#include <cmath>
#include <complex>
#include <cstdlib>
#include <random>
#include <string>
#include <utility>

#include "th/errors.hpp"

namespace th {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

std::vector<cplx> conj_torus_values(const FieldCtx& field, CharLabel Phi) {
    const int m = field.ext_group_order();
    std::vector<cplx> out(static_cast<std::size_t>(m));
    for (int t = 0; t < m; ++t) out[t] = std::conj(field.eval(Phi, field.ext_power(t)));
    return out;
}

int sign_value(const FieldCtx& field, int x) {
    if (x % field.q() == 0) return 0;
    return field.dlog_base(x % field.q()) % 2 == 0 ? 1 : -1;
}

double unit_interval(std::mt19937_64& rng) {
    return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
}

cplx gaussian(std::mt19937_64& rng) {
    const double u1 = unit_interval(rng);
    const double u2 = unit_interval(rng);
    const double r = std::sqrt(-2.0 * std::log(u1));
    return {r * std::cos(2.0 * kPi * u2), r * std::sin(2.0 * kPi * u2)};
}

}  // namespace

int multiplicity(const CharacterTable& table, int irrep, CharLabel Phi) {
    if (irrep < 0 || irrep >= table.irrep_count()) {
        throw ValidationFailedError("irreducible index " + std::to_string(irrep) +
                                    " is out of range");
    }
    const Gl2Ctx& group = table.group();
    const FieldCtx& field = group.field();
    const int m = field.ext_group_order();
    const CharLabel twist = field.frobenius_twist(Phi);

    cplx plain = 0.0;
    cplx partner = 0.0;
    for (int t = 0; t < m; ++t) {
        const ExtElem z = field.ext_power(t);
        const cplx c = table.torus_value(irrep, t);
        plain += std::conj(field.eval(Phi, z)) * c;
        partner += std::conj(field.eval(twist, z)) * c;
    }
    plain /= static_cast<double>(m);
    partner /= static_cast<double>(m);

    const cplx symmetrized = 0.5 * (plain + partner);
    if (std::abs(plain - symmetrized) > 1e-9) {
        throw ValidationFailedError("reciprocity sum disagrees with its Frobenius symmetrization");
    }
    const long long rounded = std::llround(plain.real());
    if (std::abs(plain - cplx(static_cast<double>(rounded), 0.0)) > 1e-6 || rounded < 0) {
        throw NonIntegralMultiplicityError("reciprocity sum " + std::to_string(plain.real()) +
                                           " does not round to a nonnegative integer");
    }
    return static_cast<int>(rounded);
}

std::vector<int> decompose_induced(const CharacterTable& table, CharLabel Phi) {
    std::vector<int> out(static_cast<std::size_t>(table.irrep_count()));
    for (int i = 0; i < table.irrep_count(); ++i) out[i] = multiplicity(table, i, Phi);
    return out;
}

std::vector<int> constituents(const CharacterTable& table, CharLabel Phi) {
    std::vector<int> out;
    const std::vector<int> mults = decompose_induced(table, Phi);
    for (int i = 0; i < table.irrep_count(); ++i) {
        if (mults[i] == 0) continue;
        if (mults[i] != 1) {
            throw ValidationFailedError("multiplicity " + std::to_string(mults[i]) + " at " +
                                        irrep_name(table.irrep(i)) + " breaks multiplicity freeness");
        }
        out.push_back(i);
    }
    return out;
}

int predicted_multiplicity(const FieldCtx& field, const IrrepLabel& irrep, CharLabel Phi) {
    if (Phi.modulus != field.ext_group_order()) {
        throw DomainMismatchError("twisting character must be a character of E^x");
    }
    const int base = field.base_group_order();
    const int ext = field.ext_group_order();
    const int phi = field.restriction(Phi).index;

    switch (irrep.family) {
        case Family::OneDim:
            return (2 * irrep.p1) % base == phi ? 1 : 0;
        case Family::Steinberg: {
            const int square = (2 * irrep.p1) % base == phi ? 1 : 0;
            const int pullback = field.norm_pullback(field.base_char(irrep.p1)) == Phi ? 1 : 0;
            return square - pullback;
        }
        case Family::Principal:
            return (irrep.p1 + irrep.p2) % base == phi ? 1 : 0;
        case Family::Cuspidal: {
            const int restricted = irrep.p1 % base == phi ? 1 : 0;
            const int direct = irrep.p1 == Phi.index % ext ? 1 : 0;
            const int partner = irrep.p2 == Phi.index % ext ? 1 : 0;
            return restricted - direct - partner;
        }
    }
    throw ValidationFailedError("unknown irreducible family");
}

std::vector<DecompositionRow> verify_decomposition(const CharacterTable& table, CharLabel Phi) {
    const FieldCtx& field = table.group().field();
    std::vector<DecompositionRow> rows;
    rows.reserve(static_cast<std::size_t>(table.irrep_count()));
    for (int i = 0; i < table.irrep_count(); ++i) {
        DecompositionRow row;
        row.irrep = table.irrep(i);
        row.dim = table.dim(i);
        row.mult_oracle = multiplicity(table, i, Phi);
        row.mult_predicted = predicted_multiplicity(field, row.irrep, Phi);
        rows.push_back(row);
    }
    return rows;
}

int virtual_sum_multiplicity(const CharacterTable& table, CharLabel alpha) {
    const FieldCtx& field = table.group().field();
    if (alpha.modulus != field.base_group_order()) {
        throw DomainMismatchError("virtual combinations are indexed by characters of F^x");
    }
    const CharLabel one = field.trivial_ext();
    const int st = table.index_of({Family::Steinberg, alpha.index, alpha.index});
    const int od = table.index_of({Family::OneDim, alpha.index, alpha.index});
    return multiplicity(table, st, one) + multiplicity(table, od, one);
}

int virtual_diff_multiplicity(const CharacterTable& table, CharLabel alpha) {
    const FieldCtx& field = table.group().field();
    if (alpha.modulus != field.base_group_order()) {
        throw DomainMismatchError("virtual combinations are indexed by characters of F^x");
    }
    const CharLabel one = field.trivial_ext();
    const int st = table.index_of({Family::Steinberg, alpha.index, alpha.index});
    const int od = table.index_of({Family::OneDim, alpha.index, alpha.index});
    return multiplicity(table, st, one) - multiplicity(table, od, one);
}

SphericalFunction spherical_via_averaging(const CharacterTable& table,
                                          const DoubleCosetTable& cosets, CharLabel Phi,
                                          int irrep) {
    const Gl2Ctx& group = table.group();
    const FieldCtx& field = group.field();
    const int m = field.ext_group_order();
    const int n = group.element_count();
    const std::vector<cplx> conj_phi = conj_torus_values(field, Phi);

    GroupFunction raw(static_cast<std::size_t>(n));
    for (int x = 0; x < n; ++x) {
        cplx acc = 0.0;
        for (int t = 0; t < m; ++t) {
            acc += conj_phi[t] * table.value(irrep, group.class_of(group.torus_mul_left(t, x)));
        }
        raw[x] = acc / static_cast<double>(m);
    }

    const cplx at_identity = raw[static_cast<std::size_t>(group.identity_id())];
    if (std::abs(at_identity) < 1e-6) {
        throw NotAConstituentError(irrep_name(table.irrep(irrep)) +
                                   " does not occur in the chosen induced module");
    }

    SphericalFunction out;
    out.phi = Phi;
    out.irrep = irrep;
    out.values.resize(static_cast<std::size_t>(n));
    for (int x = 0; x < n; ++x) out.values[x] = raw[x] / at_identity;
    out.coset_values.reserve(static_cast<std::size_t>(cosets.count()));
    for (int c = 0; c < cosets.count(); ++c) {
        out.coset_values.push_back(out.values[static_cast<std::size_t>(cosets.rep_ids[c])]);
    }
    return out;
}

double functional_equation_residual(const Gl2Ctx& group, CharLabel Phi, const GroupFunction& h,
                                    const std::vector<std::pair<int, int>>& pairs) {
    const FieldCtx& field = group.field();
    if (h.size() != static_cast<std::size_t>(group.element_count())) {
        throw ContextMismatchError("function length does not match the group order");
    }
    const int m = field.ext_group_order();
    const std::vector<cplx> conj_phi = conj_torus_values(field, Phi);

    double worst = 0.0;
    for (const auto& [x, y] : pairs) {
        cplx acc = 0.0;
        for (int t = 0; t < m; ++t) {
            acc += conj_phi[t] * h[static_cast<std::size_t>(group.mul(group.torus_mul_right(x, t), y))];
        }
        const cplx rhs = acc / static_cast<double>(m);
        const cplx lhs = h[static_cast<std::size_t>(x)] * h[static_cast<std::size_t>(y)];
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return worst;
}

std::vector<std::pair<int, int>> gamma_set(const FieldCtx& field, int a, TraceCoefficient coeff) {
    const int q = field.q();
    const int m = field.ext_group_order();
    const int aa = ((a % q) + q) % q;
    if (aa == 0) throw ZeroElementError("pair-set parameter a must be invertible");
    if (aa == q - 1) throw SingularParameterError("pair set undefined at a = -1");

    int c = 0;
    switch (coeff) {
        case TraceCoefficient::TwoOverAPlusOne:
            c = field.mul(2 % q, field.inv(field.add(aa, 1)));
            break;
        case TraceCoefficient::APlusOneOverTwo:
            c = field.mul(field.inv(2 % q), field.add(aa, 1));
            break;
    }

    std::vector<std::vector<int>> bucket(static_cast<std::size_t>(q * q));
    for (int tw = 0; tw < m; ++tw) {
        const ExtElem w = field.ext_power(tw);
        bucket[static_cast<std::size_t>(field.norm(w) * q + field.trace(w))].push_back(tw);
    }

    std::vector<std::pair<int, int>> pairs;
    for (int tz = 0; tz < m; ++tz) {
        const ExtElem z = field.ext_power(tz);
        const int want_norm = field.mul(aa, field.norm(z));
        const int want_trace = field.mul(c, field.trace(z));
        for (int tw : bucket[static_cast<std::size_t>(want_norm * q + want_trace)]) {
            pairs.emplace_back(tz, tw);
        }
    }
    return pairs;
}

cplx spherical_explicit(const FieldCtx& field, CharLabel Phi, CharLabel Lambda, int a,
                        TraceCoefficient coeff) {
    if (field.is_frobenius_fixed(Lambda)) {
        throw DomainMismatchError("cuspidal parameter must not be Frobenius fixed");
    }
    const int q = field.q();
    const int aa = ((a % q) + q) % q;
    const std::vector<std::pair<int, int>> pairs = gamma_set(field, a, coeff);

    cplx acc = 0.0;
    for (const auto& [tz, tw] : pairs) {
        acc += std::conj(field.eval(Phi, field.ext_power(tz))) * field.eval(Lambda, field.ext_power(tw));
    }
    cplx value = -acc / static_cast<double>(q * q - 1);
    if (aa == 1 && field.restriction(Lambda) == field.restriction(Phi)) {
        value += static_cast<double>(q) / static_cast<double>(q + 1);
    }
    return value;
}

cplx katz_candidate(const FieldCtx& field, CharLabel Lambda, int a, KatzInterpretation interp) {
    const int q = field.q();
    const int aa = ((a % q) + q) % q;
    if (aa == 0) throw ZeroElementError("circle-form parameter a must be invertible");
    if (aa == 1) throw SingularParameterError("circle form undefined at a = 1");

    const int shift = field.add(aa, field.inv(aa));
    cplx acc = 0.0;
    for (int t = 0; t <= q; ++t) {
        const ExtElem u = field.ext_power((q - 1) * t % field.ext_group_order());
        const int tr = field.trace(u);
        const cplx omega = field.eval(Lambda, u);
        cplx factor;
        switch (interp) {
            case KatzInterpretation::OmegaOnly:
                factor = omega;
                break;
            case KatzInterpretation::SignOfTrace:
                factor = static_cast<double>(sign_value(field, tr)) * omega;
                break;
            case KatzInterpretation::SignOfTracePlusTwo:
                factor = static_cast<double>(sign_value(field, field.add(2 % q, tr))) * omega;
                break;
            case KatzInterpretation::SignOfTraceMinusTwo:
                factor = static_cast<double>(sign_value(field, field.sub(2 % q, tr))) * omega;
                break;
            default:
                throw UnsupportedInterpretationError("circle-form interpretation out of range");
        }
        acc += static_cast<double>(sign_value(field, field.sub(tr, shift))) * factor;
    }
    return acc / static_cast<double>(q + 1);
}

GroupFunction random_central_function(const Gl2Ctx& group, std::uint64_t seed) {
    std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + 0x94d049bb133111ebULL);
    const int nc = group.class_count();

    std::vector<cplx> class_coeff(static_cast<std::size_t>(nc), cplx(0.0, 0.0));
    int chosen = 0;
    while (chosen < 3) {
        const int c = static_cast<int>(rng() % static_cast<std::uint64_t>(nc));
        if (class_coeff[static_cast<std::size_t>(c)] != cplx(0.0, 0.0)) continue;
        class_coeff[static_cast<std::size_t>(c)] = gaussian(rng);
        ++chosen;
    }

    GroupFunction out(static_cast<std::size_t>(group.element_count()));
    for (int id = 0; id < group.element_count(); ++id) {
        out[static_cast<std::size_t>(id)] = class_coeff[static_cast<std::size_t>(group.class_of(id))];
    }
    return out;
}

double center_multiplicativity_residual(const Gl2Ctx& group, CharLabel Phi,
                                        const GroupFunction& u, const GroupFunction& v) {
    const GroupFunction lhs = project_P_phi(group, Phi, convolve(group, u, v));
    const GroupFunction rhs =
        convolve(group, project_P_phi(group, Phi, u), project_P_phi(group, Phi, v));
    double worst = 0.0;
    for (std::size_t i = 0; i < lhs.size(); ++i) worst = std::max(worst, std::abs(lhs[i] - rhs[i]));
    return worst;
}

int center_image_dimension(const CharacterTable& table, CharLabel Phi, double tol) {
    const Gl2Ctx& group = table.group();
    const int n = group.element_count();
    const int nc = group.class_count();

    std::vector<GroupFunction> rows;
    rows.reserve(static_cast<std::size_t>(nc));
    for (int c = 0; c < nc; ++c) {
        GroupFunction indicator(static_cast<std::size_t>(n), cplx(0.0, 0.0));
        for (int id = 0; id < n; ++id) {
            if (group.class_of(id) == c) indicator[static_cast<std::size_t>(id)] = 1.0;
        }
        rows.push_back(project_P_phi(group, Phi, indicator));
    }

    int rank = 0;
    for (int col = 0; col < n && rank < nc; ++col) {
        int pivot = -1;
        double best = tol;
        for (int r = rank; r < nc; ++r) {
            const double mag = std::abs(rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)]);
            if (mag > best) {
                best = mag;
                pivot = r;
            }
        }
        if (pivot < 0) continue;
        std::swap(rows[static_cast<std::size_t>(rank)], rows[static_cast<std::size_t>(pivot)]);
        const cplx lead = rows[static_cast<std::size_t>(rank)][static_cast<std::size_t>(col)];
        for (int r = rank + 1; r < nc; ++r) {
            const cplx factor = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] / lead;
            if (factor == cplx(0.0, 0.0)) continue;
            for (int j = col; j < n; ++j) {
                rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] -=
                    factor * rows[static_cast<std::size_t>(rank)][static_cast<std::size_t>(j)];
            }
        }
        ++rank;
    }
    return rank;
}

GroupFunction reconstruct_via_spherical(const CharacterTable& table, const HeckeFunction& f,
                                        const std::vector<SphericalFunction>& basis) {
    const Gl2Ctx& group = table.group();
    const std::size_t n = static_cast<std::size_t>(group.element_count());
    if (f.values.size() != n) {
        throw ContextMismatchError("function length does not match the group order");
    }
    const std::vector<cplx> traces = character_traces(table, f.values);

    GroupFunction out(n, cplx(0.0, 0.0));
    for (const SphericalFunction& s : basis) {
        if (!(s.phi == f.phi)) {
            throw ContextMismatchError("spherical basis twisted against a different character");
        }
        // The coefficient along a constituent's spherical line is read off
        // the trace at the contragredient label; at the constituent itself
        // the trace of a twisted function vanishes unless pi is self-dual.
        const cplx kappa = static_cast<double>(table.dim(s.irrep)) / static_cast<double>(group.order()) *
                           traces[static_cast<std::size_t>(conjugate_irrep(table, s.irrep))];
        for (std::size_t i = 0; i < n; ++i) out[i] += kappa * s.values[i];
    }
    return out;
}

}  // namespace th
