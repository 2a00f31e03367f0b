#include "th/uncertainty.hpp"

#include <algorithm>
#include <cmath>

#include "th/errors.hpp"

namespace th {

std::vector<int> fourier_support(const CharacterTable& table, const HeckeFunction& f,
                                 double tol) {
    const Gl2Ctx& group = table.group();
    if (support_size(f.values) == 0) {
        throw ZeroFunctionError("transform support of the zero function is undefined");
    }
    if (bi_equivariance_residual(group, f.phi, f.values) > kSupportTol) {
        throw NotBiEquivariantError("transform support expects a twisted bi-equivariant function");
    }
    const std::vector<double> hs = hecke_hs_all(table, f);
    std::vector<int> out;
    for (int i = 0; i < table.irrep_count(); ++i) {
        if (hs[static_cast<std::size_t>(i)] > tol) out.push_back(conjugate_irrep(table, i));
    }
    std::sort(out.begin(), out.end());
    return out;
}

UncertaintyRecord uncertainty_check(const CharacterTable& table, const HeckeFunction& f) {
    const Gl2Ctx& group = table.group();
    HeckeFunction cleaned = f;
    clean_function(cleaned.values);

    UncertaintyRecord rec;
    rec.phi = f.phi;
    rec.support_size = support_size(cleaned.values);
    if (rec.support_size == 0) {
        throw ZeroFunctionError("uncertainty record of the zero function is undefined");
    }
    for (int i : fourier_support(table, cleaned)) rec.fourier_degree_sum += table.dim(i);
    rec.product = rec.support_size * rec.fourier_degree_sum;
    rec.bound = group.order();
    rec.margin = rec.product - rec.bound;
    rec.extremal = rec.margin == 0;
    return rec;
}

std::vector<ExtremalCandidate> uncertainty_scan(const CharacterTable& table,
                                                const DoubleCosetTable& cosets, CharLabel Phi) {
    const Gl2Ctx& group = table.group();
    const int n = group.element_count();
    std::vector<ExtremalCandidate> out;

    {
        const HeckeFunction eps = epsilon_idempotent(group, Phi);
        out.push_back({"idempotent", uncertainty_check(table, eps)});
    }

    for (int c = 0; c < cosets.count(); ++c) {
        GroupFunction point(static_cast<std::size_t>(n), cplx(0.0, 0.0));
        point[static_cast<std::size_t>(cosets.rep_ids[c])] = 1.0;
        HeckeFunction f{Phi, project_two_sided(group, Phi, point)};
        clean_function(f.values);
        if (support_size(f.values) == 0) continue;  // twist incompatible with this coset
        out.push_back({"coset[" + std::to_string(c) + "]", uncertainty_check(table, f)});
    }

    for (int i : constituents(table, Phi)) {
        const SphericalFunction h = spherical_via_averaging(table, cosets, Phi, i);
        out.push_back({"spherical " + irrep_name(table.irrep(i)),
                       uncertainty_check(table, HeckeFunction{Phi, h.values})});
    }
    return out;
}

std::vector<ExtremalCandidate> extremal_scan(const CharacterTable& table,
                                             const DoubleCosetTable& cosets, CharLabel Phi) {
    std::vector<ExtremalCandidate> out;
    for (ExtremalCandidate& cand : uncertainty_scan(table, cosets, Phi)) {
        if (cand.record.extremal) out.push_back(std::move(cand));
    }
    return out;
}

double transform_sup_bound_margin(const CharacterTable& table, const HeckeFunction& f) {
    const double scale = static_cast<double>(table.group().order());
    const std::vector<double> hs = hecke_hs_all(table, f);
    double rhs = 0.0;
    for (int i = 0; i < table.irrep_count(); ++i) {
        rhs += static_cast<double>(table.dim(i)) * std::sqrt(hs[static_cast<std::size_t>(i)]);
    }
    return rhs / scale - sup_norm(f.values);
}

double support_l2_bound_margin(const GroupFunction& f) {
    const double sup = sup_norm(f);
    return sup * sup * static_cast<double>(support_size(f)) - l2_norm_sq(f);
}

}  // namespace th
