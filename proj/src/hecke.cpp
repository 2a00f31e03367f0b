#include "th/hecke.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace th {

namespace {

void require_size(const Gl2Ctx& group, const GroupFunction& f) {
    if (static_cast<long long>(f.size()) != group.order()) {
        throw ContextMismatchError("function length does not match the group order");
    }
}

// Unit-modulus torus character values Phi(gE^t) for t in [0, m).
std::vector<cplx> torus_character_values(const Gl2Ctx& group, CharLabel Phi) {
    const FieldCtx& f = group.field();
    const int m = f.ext_group_order();
    if (Phi.modulus != m) {
        throw DomainMismatchError("twisting character must be a character of E^x");
    }
    std::vector<cplx> vals(m);
    for (int t = 0; t < m; ++t) {
        const long long phase = static_cast<long long>(Phi.index) * t % m;
        vals[t] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(phase) / m);
    }
    return vals;
}

}  // namespace

GroupFunction convolve(const Gl2Ctx& group, const GroupFunction& f, const GroupFunction& h) {
    require_size(group, f);
    require_size(group, h);
    const int n = group.element_count();
    GroupFunction out(n, cplx{0.0, 0.0});
    for (int y = 0; y < n; ++y) {
        const cplx fy = f[y];
        if (fy == cplx{0.0, 0.0}) continue;
        const int iy = group.inverse(y);
        for (int x = 0; x < n; ++x) {
            out[x] += fy * h[group.mul(iy, x)];
        }
    }
    return out;
}

GroupFunction adjoint_function(const Gl2Ctx& group, const GroupFunction& f) {
    require_size(group, f);
    const int n = group.element_count();
    GroupFunction out(n);
    for (int x = 0; x < n; ++x) out[x] = std::conj(f[group.inverse(x)]);
    return out;
}

HeckeFunction epsilon_idempotent(const Gl2Ctx& group, CharLabel Phi) {
    const std::vector<cplx> phiv = torus_character_values(group, Phi);
    const int m = group.torus_size();
    GroupFunction values(group.element_count(), cplx{0.0, 0.0});
    const double scale = 1.0 / static_cast<double>(m);
    for (int t = 0; t < m; ++t) values[group.torus_id(t)] = scale * phiv[t];
    return {Phi, std::move(values)};
}

GroupFunction project_P_phi(const Gl2Ctx& group, CharLabel Phi, const GroupFunction& f) {
    require_size(group, f);
    const std::vector<cplx> phiv = torus_character_values(group, Phi);
    const int m = group.torus_size();
    const int n = group.element_count();
    GroupFunction out(n, cplx{0.0, 0.0});
    for (int s = 0; s < m; ++s) {
        const cplx c = std::conj(phiv[s]);
        for (int x = 0; x < n; ++x) {
            out[x] += c * f[group.torus_mul_left(s, x)];
        }
    }
    const double scale = 1.0 / static_cast<double>(m);
    for (cplx& v : out) v *= scale;
    return out;
}

GroupFunction project_right(const Gl2Ctx& group, const GroupFunction& f, CharLabel Phi) {
    require_size(group, f);
    const std::vector<cplx> phiv = torus_character_values(group, Phi);
    const int m = group.torus_size();
    const int n = group.element_count();
    GroupFunction out(n, cplx{0.0, 0.0});
    for (int s = 0; s < m; ++s) {
        const cplx c = std::conj(phiv[s]);
        for (int x = 0; x < n; ++x) {
            out[x] += c * f[group.torus_mul_right(x, s)];
        }
    }
    const double scale = 1.0 / static_cast<double>(m);
    for (cplx& v : out) v *= scale;
    return out;
}

GroupFunction project_two_sided(const Gl2Ctx& group, CharLabel Phi, const GroupFunction& f) {
    return project_right(group, project_P_phi(group, Phi, f), Phi);
}

double bi_equivariance_residual(const Gl2Ctx& group, CharLabel Phi, const GroupFunction& f) {
    const GroupFunction left = project_P_phi(group, Phi, f);
    const GroupFunction right = project_right(group, f, Phi);
    double worst = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        worst = std::max(worst, std::abs(left[i] - f[i]));
        worst = std::max(worst, std::abs(right[i] - f[i]));
    }
    return worst;
}

GroupFunction isotypic_project(const CharacterTable& table, int irrep, const GroupFunction& f) {
    const Gl2Ctx& group = table.group();
    require_size(group, f);
    const int n = group.element_count();
    const double scale = static_cast<double>(table.dim(irrep)) / static_cast<double>(group.order());
    GroupFunction out(n, cplx{0.0, 0.0});
    for (int y = 0; y < n; ++y) {
        const cplx c = scale * std::conj(table.value(irrep, group.class_of(y)));
        if (c == cplx{0.0, 0.0}) continue;
        const int iy = group.inverse(y);
        for (int x = 0; x < n; ++x) {
            out[x] += c * f[group.mul(iy, x)];
        }
    }
    return out;
}

std::vector<cplx> class_sums(const Gl2Ctx& group, const GroupFunction& f) {
    require_size(group, f);
    std::vector<cplx> sums(group.class_count(), cplx{0.0, 0.0});
    for (int x = 0; x < group.element_count(); ++x) sums[group.class_of(x)] += f[x];
    return sums;
}

std::vector<cplx> character_traces(const CharacterTable& table, const GroupFunction& f) {
    const Gl2Ctx& group = table.group();
    const std::vector<cplx> sums = class_sums(group, f);
    std::vector<cplx> traces(table.irrep_count(), cplx{0.0, 0.0});
    for (int i = 0; i < table.irrep_count(); ++i) {
        cplx acc = 0.0;
        for (int c = 0; c < group.class_count(); ++c) acc += table.value(i, c) * sums[c];
        traces[i] = acc;
    }
    return traces;
}

namespace {

double checked_real(cplx value) {
    if (value.real() < -1e-8 || std::abs(value.imag()) > 1e-8) {
        throw NegativeResidualError("Hilbert-Schmidt character sum is not a nonnegative real");
    }
    return std::max(0.0, value.real());
}

}  // namespace

std::vector<double> fourier_hs_all(const CharacterTable& table, const GroupFunction& f) {
    const Gl2Ctx& group = table.group();
    const GroupFunction u = convolve(group, f, adjoint_function(group, f));
    const std::vector<cplx> traces = character_traces(table, u);
    std::vector<double> out(traces.size());
    for (std::size_t i = 0; i < traces.size(); ++i) out[i] = checked_real(traces[i]);
    return out;
}

double fourier_hs_norm_sq(const CharacterTable& table, int irrep, const GroupFunction& f) {
    return fourier_hs_all(table, f)[irrep];
}

std::vector<double> hecke_hs_all(const CharacterTable& table, const HeckeFunction& f) {
    const std::vector<cplx> traces = character_traces(table, f.values);
    std::vector<double> out(traces.size());
    for (std::size_t i = 0; i < traces.size(); ++i) out[i] = std::norm(traces[i]);
    return out;
}

GroupFunction plancherel_reconstruct(const CharacterTable& table, const HeckeFunction& f,
                                     const std::vector<int>& constituents) {
    const Gl2Ctx& group = table.group();
    if (bi_equivariance_residual(group, f.phi, f.values) > kSupportTol) {
        throw NotBiEquivariantError("reconstruction input is not twisted bi-equivariant");
    }
    GroupFunction out(group.element_count(), cplx{0.0, 0.0});
    for (int irrep : constituents) {
        // The component carried by a constituent sits in the isotypic space
        // of its contragredient under this transform convention.
        const GroupFunction part = isotypic_project(table, conjugate_irrep(table, irrep), f.values);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += part[i];
    }
    return out;
}

HeckeFunction random_hecke_function(const Gl2Ctx& group, CharLabel Phi, std::uint64_t seed) {
    const int n = group.element_count();
    std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + 0x2545f4914f6cdd1dULL);
    // Box-Muller on explicit 53-bit uniforms keeps the stream identical
    // across standard library implementations.
    auto uniform = [&rng]() {
        return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
    };
    auto gaussian_pair = [&]() {
        const double r = std::sqrt(-2.0 * std::log(uniform()));
        const double theta = 2.0 * std::numbers::pi * uniform();
        return cplx{r * std::cos(theta), r * std::sin(theta)};
    };
    for (int attempt = 0; attempt < 100; ++attempt) {
        GroupFunction raw(n);
        for (int i = 0; i < n; ++i) raw[i] = gaussian_pair();
        GroupFunction projected = project_two_sided(group, Phi, raw);
        if (sup_norm(projected) > 1e-12) {
            return {Phi, std::move(projected)};
        }
    }
    throw DegenerateChannelError("two-sided projection vanished for 100 consecutive samples");
}

void clean_function(GroupFunction& f, double tol) {
    for (cplx& v : f) {
        if (std::abs(v) < tol) v = cplx{0.0, 0.0};
    }
}

long long support_size(const GroupFunction& f, double tol) {
    long long count = 0;
    for (const cplx& v : f) {
        if (std::abs(v) >= tol) ++count;
    }
    return count;
}

double sup_norm(const GroupFunction& f) {
    double worst = 0.0;
    for (const cplx& v : f) worst = std::max(worst, std::abs(v));
    return worst;
}

double l2_norm_sq(const GroupFunction& f) {
    double acc = 0.0;
    for (const cplx& v : f) acc += std::norm(v);
    return acc;
}

}  // namespace th
