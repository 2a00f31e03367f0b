#include "th/chartable.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace th {

namespace {

int encode_irrep(const IrrepLabel& label) {
    return (static_cast<int>(label.family) << 24) | (label.p1 << 12) | label.p2;
}

cplx family_value(const FieldCtx& f, const IrrepLabel& irrep, const ClassLabel& cls) {
    const int q = f.q();
    switch (irrep.family) {
        case Family::OneDim: {
            const CharLabel alpha = f.base_char(irrep.p1);
            switch (cls.kind) {
                case ClassKind::Central:
                case ClassKind::Unipotent: {
                    const int a = f.base_power(cls.p1);
                    return f.eval_base(alpha, f.mul(a, a));
                }
                case ClassKind::Split: {
                    const int det = f.mul(f.base_power(cls.p1), f.base_power(cls.p2));
                    return f.eval_base(alpha, det);
                }
                case ClassKind::Elliptic:
                    return f.eval_base(alpha, f.norm(f.ext_power(cls.p1)));
            }
            break;
        }
        case Family::Steinberg: {
            const CharLabel alpha = f.base_char(irrep.p1);
            switch (cls.kind) {
                case ClassKind::Central: {
                    const int a = f.base_power(cls.p1);
                    return static_cast<double>(q) * f.eval_base(alpha, f.mul(a, a));
                }
                case ClassKind::Unipotent:
                    return 0.0;
                case ClassKind::Split: {
                    const int det = f.mul(f.base_power(cls.p1), f.base_power(cls.p2));
                    return f.eval_base(alpha, det);
                }
                case ClassKind::Elliptic:
                    return -f.eval_base(alpha, f.norm(f.ext_power(cls.p1)));
            }
            break;
        }
        case Family::Principal: {
            const CharLabel alpha = f.base_char(irrep.p1);
            const CharLabel beta = f.base_char(irrep.p2);
            switch (cls.kind) {
                case ClassKind::Central: {
                    const int a = f.base_power(cls.p1);
                    return static_cast<double>(q + 1) * f.eval_base(alpha, a) * f.eval_base(beta, a);
                }
                case ClassKind::Unipotent: {
                    const int a = f.base_power(cls.p1);
                    return f.eval_base(alpha, a) * f.eval_base(beta, a);
                }
                case ClassKind::Split: {
                    const int r1 = f.base_power(cls.p1);
                    const int r2 = f.base_power(cls.p2);
                    return f.eval_base(alpha, r1) * f.eval_base(beta, r2) +
                           f.eval_base(alpha, r2) * f.eval_base(beta, r1);
                }
                case ClassKind::Elliptic:
                    return 0.0;
            }
            break;
        }
        case Family::Cuspidal: {
            const CharLabel Lambda = f.ext_char(irrep.p1);
            const CharLabel lambda = f.restriction(Lambda);
            switch (cls.kind) {
                case ClassKind::Central:
                    return static_cast<double>(q - 1) * f.eval_base(lambda, f.base_power(cls.p1));
                case ClassKind::Unipotent:
                    return -f.eval_base(lambda, f.base_power(cls.p1));
                case ClassKind::Split:
                    return 0.0;
                case ClassKind::Elliptic: {
                    const ExtElem z = f.ext_power(cls.p1);
                    return -(f.eval(Lambda, z) + f.eval(Lambda, f.frobenius(z)));
                }
            }
            break;
        }
    }
    return 0.0;
}

}  // namespace

int irrep_dim(const IrrepLabel& label, int q) {
    switch (label.family) {
        case Family::OneDim:
            return 1;
        case Family::Steinberg:
            return q;
        case Family::Principal:
            return q + 1;
        case Family::Cuspidal:
            return q - 1;
    }
    return 0;
}

std::string irrep_name(const IrrepLabel& label) {
    switch (label.family) {
        case Family::OneDim:
            return "one[" + std::to_string(label.p1) + "]";
        case Family::Steinberg:
            return "st[" + std::to_string(label.p1) + "]";
        case Family::Principal:
            return "pr[" + std::to_string(label.p1) + "," + std::to_string(label.p2) + "]";
        case Family::Cuspidal:
            return "cu[" + std::to_string(label.p1) + "]";
    }
    return "?";
}

CharacterTable CharacterTable::build(const Gl2Ctx& group, double tol) {
    const FieldCtx& f = group.field();
    const int q = f.q();
    const int m = f.ext_group_order();

    CharacterTable table;
    table.group_ = &group;
    table.class_count_ = group.class_count();

    for (int i = 0; i < q - 1; ++i) table.irreps_.push_back({Family::OneDim, i, i});
    for (int i = 0; i < q - 1; ++i) table.irreps_.push_back({Family::Steinberg, i, i});
    for (int i = 0; i < q - 1; ++i) {
        for (int j = i + 1; j < q - 1; ++j) table.irreps_.push_back({Family::Principal, i, j});
    }
    for (int j = 1; j < m; ++j) {
        if (j % (q + 1) == 0) continue;
        const int jq = static_cast<int>(static_cast<long long>(j) * q % m);
        if (j > jq) continue;
        table.irreps_.push_back({Family::Cuspidal, j, jq});
    }

    const int nr = table.irrep_count();
    const int nc = table.class_count_;
    long long dim_sq = 0;
    for (const IrrepLabel& label : table.irreps_) {
        const int d = irrep_dim(label, q);
        table.dims_.push_back(d);
        dim_sq += static_cast<long long>(d) * d;
    }
    if (nr != nc || dim_sq != group.order()) {
        throw ValidationFailedError("irreducible label census does not match the group");
    }

    table.values_.resize(static_cast<std::size_t>(nr) * nc);
    for (int i = 0; i < nr; ++i) {
        for (int c = 0; c < nc; ++c) {
            table.values_[static_cast<std::size_t>(i) * nc + c] =
                family_value(f, table.irreps_[i], group.class_label(c));
        }
    }

    for (int i = 0; i < nr; ++i) {
        const int id_class = group.class_of(group.identity_id());
        if (std::abs(table.value(i, id_class) - static_cast<double>(table.dims_[i])) > tol) {
            throw ValidationFailedError("character at the identity disagrees with the dimension");
        }
    }

    const double inv_order = 1.0 / static_cast<double>(group.order());
    double row_residual = 0.0;
    for (int i = 0; i < nr; ++i) {
        for (int j = i; j < nr; ++j) {
            cplx acc = 0.0;
            for (int c = 0; c < nc; ++c) {
                acc += static_cast<double>(group.class_size(c)) * table.value(i, c) *
                       std::conj(table.value(j, c));
            }
            acc *= inv_order;
            const double want = (i == j) ? 1.0 : 0.0;
            row_residual = std::max(row_residual, std::abs(acc - want));
        }
    }
    double column_residual = 0.0;
    for (int c = 0; c < nc; ++c) {
        for (int e = c; e < nc; ++e) {
            cplx acc = 0.0;
            for (int i = 0; i < nr; ++i) {
                acc += table.value(i, c) * std::conj(table.value(i, e));
            }
            const double want = (c == e) ? static_cast<double>(group.order()) /
                                               static_cast<double>(group.class_size(c))
                                         : 0.0;
            column_residual = std::max(column_residual, std::abs(acc - want));
        }
    }
    table.row_residual_ = row_residual;
    table.column_residual_ = column_residual;
    if (row_residual > tol || column_residual > tol) {
        throw ValidationFailedError("orthogonality residual above tolerance");
    }
    return table;
}

int CharacterTable::index_of(const IrrepLabel& label) const {
    static thread_local std::map<const CharacterTable*, std::map<int, int>> cache;
    auto& lookup = cache[this];
    if (lookup.empty()) {
        for (int i = 0; i < irrep_count(); ++i) lookup[encode_irrep(irreps_[i])] = i;
    }
    auto it = lookup.find(encode_irrep(label));
    return it == lookup.end() ? -1 : it->second;
}

int conjugate_irrep(const CharacterTable& table, int irrep) {
    const FieldCtx& field = table.group().field();
    const int base = field.base_group_order();
    const int ext = field.ext_group_order();
    const IrrepLabel& label = table.irrep(irrep);

    IrrepLabel conj = label;
    switch (label.family) {
        case Family::OneDim:
        case Family::Steinberg:
            conj.p1 = (base - label.p1) % base;
            conj.p2 = conj.p1;
            break;
        case Family::Principal: {
            const int a = (base - label.p1) % base;
            const int b = (base - label.p2) % base;
            conj.p1 = std::min(a, b);
            conj.p2 = std::max(a, b);
            break;
        }
        case Family::Cuspidal: {
            const int j = (ext - label.p1) % ext;
            const int partner = static_cast<int>(static_cast<long long>(j) * field.q() % ext);
            conj.p1 = std::min(j, partner);
            conj.p2 = std::max(j, partner);
            break;
        }
    }
    const int out = table.index_of(conj);
    if (out < 0) throw ValidationFailedError("conjugate irreducible missing from the table");
    return out;
}

cplx principal_pattern_on_torus(const FieldCtx& field, CharLabel alpha, CharLabel beta, int t) {
    const ExtElem z = field.ext_power(t);
    if (!field.in_base(z)) return 0.0;
    return static_cast<double>(field.q() + 1) * field.eval_base(alpha, z.a) *
           field.eval_base(beta, z.a);
}

cplx cuspidal_pattern_on_torus(const FieldCtx& field, CharLabel M, int t) {
    const ExtElem z = field.ext_power(t);
    if (field.in_base(z)) {
        return static_cast<double>(field.q() - 1) * field.eval_base(field.restriction(M), z.a);
    }
    return -(field.eval(M, z) + field.eval(M, field.frobenius(z)));
}

double twist_identity_residual(const CharacterTable& table, CharLabel Phi) {
    const Gl2Ctx& group = table.group();
    const FieldCtx& f = group.field();
    const int q = f.q();
    const int m = f.ext_group_order();
    const CharLabel phi = f.restriction(Phi);
    const CharLabel PhiQ = f.frobenius_twist(Phi);

    double worst = 0.0;
    for (int t = 0; t < m; ++t) {
        const ExtElem z = f.ext_power(t);
        const cplx twist = f.eval(Phi, z) + f.eval(PhiQ, z);

        for (int i = 0; i < q - 1; ++i) {
            const CharLabel alpha = f.base_char(i);
            const cplx st = table.torus_value(table.index_of({Family::Steinberg, i, i}), t);
            const cplx one = table.torus_value(table.index_of({Family::OneDim, i, i}), t);
            const cplx cusp_term = cuspidal_pattern_on_torus(f, f.product(Phi, f.norm_pullback(alpha)), t);
            const cplx princ_term = principal_pattern_on_torus(f, f.product(phi, alpha), alpha, t);
            worst = std::max(worst, std::abs(twist * st - (cusp_term + princ_term)));
            worst = std::max(worst, std::abs(twist * one - (princ_term - cusp_term)));
        }
        for (int i = 0; i < q - 1; ++i) {
            for (int j = i + 1; j < q - 1; ++j) {
                const CharLabel alpha = f.base_char(i);
                const CharLabel beta = f.base_char(j);
                const cplx lhs =
                    twist * table.torus_value(table.index_of({Family::Principal, i, j}), t);
                const cplx rhs = principal_pattern_on_torus(f, f.product(phi, alpha), beta, t) +
                                 principal_pattern_on_torus(f, alpha, f.product(phi, beta), t);
                worst = std::max(worst, std::abs(lhs - rhs));
            }
        }
        for (int i = 0; i < table.irrep_count(); ++i) {
            const IrrepLabel& label = table.irrep(i);
            if (label.family != Family::Cuspidal) continue;
            const CharLabel Lambda = f.ext_char(label.p1);
            const cplx lhs = twist * table.torus_value(i, t);
            const cplx rhs = cuspidal_pattern_on_torus(f, f.product(Phi, Lambda), t) +
                             cuspidal_pattern_on_torus(f, f.product(PhiQ, Lambda), t);
            worst = std::max(worst, std::abs(lhs - rhs));
        }
    }
    return worst;
}

}  // namespace th
