#include "th/gl2.hpp"

#include <map>
#include <stdexcept>

namespace th {

namespace {

GroupElem make_elem(int a, int b, int c, int d) {
    return {static_cast<std::int8_t>(a), static_cast<std::int8_t>(b),
            static_cast<std::int8_t>(c), static_cast<std::int8_t>(d)};
}

int encode_label(const ClassLabel& label) {
    return (static_cast<int>(label.kind) << 24) | (label.p1 << 12) | label.p2;
}

// Square root in F_q by scanning, -1 when x is not a square.
int field_sqrt(const FieldCtx& f, int x) {
    for (int r = 0; r < f.q(); ++r) {
        if (f.mul(r, r) == x) return r;
    }
    return -1;
}

}  // namespace

GroupElem torus_embed(const FieldCtx& field, ExtElem z) {
    if (field.is_zero(z)) throw ZeroElementError("torus embedding of zero");
    return make_elem(z.a, field.mul(field.delta(), z.b), z.b, z.a);
}

ExtElem mobius_act(const FieldCtx& field, GroupElem g, ExtElem w) {
    if (field.in_base(w)) throw DomainMismatchError("Mobius action point must lie outside F");
    const ExtElem num = field.eadd(field.emul(field.from_base(g.a), w), field.from_base(g.b));
    const ExtElem den = field.eadd(field.emul(field.from_base(g.c), w), field.from_base(g.d));
    return field.emul(num, field.einv(den));
}

DistanceValue distance_invariant(const FieldCtx& field, ExtElem z, ExtElem w) {
    if (field.in_base(z) || field.in_base(w)) {
        throw DomainMismatchError("distance invariant needs points of the half plane");
    }
    if (w == field.frobenius(z)) return {true, 0};
    const int num = field.norm(field.esub(z, w));
    const int den = field.norm(field.esub(z, field.frobenius(w)));
    return {false, field.mul(num, field.inv(den))};
}

std::string distance_name(const DistanceValue& d) {
    return d.infinite ? "inf" : std::to_string(d.value);
}

ClassLabel conjugacy_class_of(const FieldCtx& field, GroupElem g) {
    const int tr = field.add(g.a, g.d);
    const int det = field.sub(field.mul(g.a, g.d), field.mul(g.b, g.c));
    if (det == 0) throw DomainMismatchError("singular matrix has no conjugacy class");
    const int disc = field.sub(field.mul(tr, tr), field.mul(4 % field.q(), det));
    const int half = field.inv(2);
    if (disc == 0) {
        const int eig = field.mul(tr, half);
        if (g.b == 0 && g.c == 0 && g.a == g.d) {
            return {ClassKind::Central, field.dlog_base(eig), field.dlog_base(eig)};
        }
        return {ClassKind::Unipotent, field.dlog_base(eig), field.dlog_base(eig)};
    }
    const int root = field_sqrt(field, disc);
    if (root >= 0) {
        const int r1 = field.mul(field.add(tr, root), half);
        const int r2 = field.mul(field.sub(tr, root), half);
        int t1 = field.dlog_base(r1);
        int t2 = field.dlog_base(r2);
        if (t1 > t2) std::swap(t1, t2);
        return {ClassKind::Split, t1, t2};
    }
    // Irreducible characteristic polynomial: eigenvalues are z, z^q in E.
    const int scaled = field.mul(disc, field.inv(field.delta()));
    const int u = field_sqrt(field, scaled);
    const ExtElem z{field.mul(tr, half), field.mul(u, half)};
    const int t = field.dlog_ext(z);
    const int m = field.ext_group_order();
    const int tq = static_cast<int>(static_cast<long long>(t) * field.q() % m);
    return {ClassKind::Elliptic, std::min(t, tq), std::max(t, tq)};
}

Gl2Ctx Gl2Ctx::build(const FieldCtx& field) {
    Gl2Ctx ctx(field);
    const int q = field.q();
    const int m = field.ext_group_order();

    ctx.index_of_.assign(q * q * q * q, -1);
    for (int a = 0; a < q; ++a) {
        for (int b = 0; b < q; ++b) {
            for (int c = 0; c < q; ++c) {
                for (int d = 0; d < q; ++d) {
                    if (field.sub(field.mul(a, d), field.mul(b, c)) == 0) continue;
                    ctx.index_of_[((a * q + b) * q + c) * q + d] =
                        static_cast<std::int32_t>(ctx.elements_.size());
                    ctx.elements_.push_back(make_elem(a, b, c, d));
                }
            }
        }
    }
    ctx.identity_id_ = ctx.id_of(make_elem(1, 0, 0, 1));

    const int n = ctx.element_count();
    ctx.inverse_.assign(n, -1);
    for (int id = 0; id < n; ++id) {
        const GroupElem& g = ctx.elements_[id];
        const int det = field.sub(field.mul(g.a, g.d), field.mul(g.b, g.c));
        const int di = field.inv(det);
        ctx.inverse_[id] = ctx.id_of(make_elem(field.mul(di, g.d), field.mul(di, field.neg(g.b)),
                                               field.mul(di, field.neg(g.c)), field.mul(di, g.a)));
    }

    ctx.torus_ids_.assign(m, -1);
    for (int t = 0; t < m; ++t) {
        ctx.torus_ids_[t] = ctx.id_of(torus_embed(field, field.ext_power(t)));
    }

    // Canonical class order: central, unipotent, split, elliptic, each by
    // ascending parameter.
    std::map<int, int> class_index;
    auto add_class = [&](const ClassLabel& label, int rep_id, long long size) {
        class_index[encode_label(label)] = static_cast<int>(ctx.class_labels_.size());
        ctx.class_labels_.push_back(label);
        ctx.class_reps_.push_back(rep_id);
        ctx.class_sizes_.push_back(size);
    };
    for (int t = 0; t < q - 1; ++t) {
        const int r = field.base_power(t);
        add_class({ClassKind::Central, t, t}, ctx.id_of(make_elem(r, 0, 0, r)), 1);
    }
    for (int t = 0; t < q - 1; ++t) {
        const int r = field.base_power(t);
        add_class({ClassKind::Unipotent, t, t}, ctx.id_of(make_elem(r, 1, 0, r)),
                  static_cast<long long>(q) * q - 1);
    }
    for (int i = 0; i < q - 1; ++i) {
        for (int j = i + 1; j < q - 1; ++j) {
            const int r1 = field.base_power(i);
            const int r2 = field.base_power(j);
            add_class({ClassKind::Split, i, j}, ctx.id_of(make_elem(r1, 0, 0, r2)),
                      static_cast<long long>(q) * q + q);
        }
    }
    for (int t = 1; t < m; ++t) {
        if (t % (q + 1) == 0) continue;
        const int tq = static_cast<int>(static_cast<long long>(t) * q % m);
        if (t > tq) continue;
        add_class({ClassKind::Elliptic, t, tq}, ctx.torus_ids_[t],
                  static_cast<long long>(q) * q - q);
    }

    ctx.class_of_.assign(n, -1);
    for (int id = 0; id < n; ++id) {
        ctx.class_of_[id] = class_index.at(encode_label(conjugacy_class_of(field, ctx.elements_[id])));
    }
    ctx.torus_class_.assign(m, -1);
    for (int t = 0; t < m; ++t) {
        ctx.torus_class_[t] = ctx.class_of_[ctx.torus_ids_[t]];
    }

    if (q <= 7) {
        ctx.mul_table_.assign(static_cast<std::size_t>(n) * n, -1);
        for (int x = 0; x < n; ++x) {
            const GroupElem gx = ctx.elements_[x];
            const std::size_t base = static_cast<std::size_t>(x) * n;
            for (int y = 0; y < n; ++y) {
                ctx.mul_table_[base + y] = ctx.id_of(ctx.mul_elem(gx, ctx.elements_[y]));
            }
        }
        ctx.has_mul_table_ = true;
    }

    if (q <= 11) {
        ctx.torus_left_.assign(static_cast<std::size_t>(m) * n, -1);
        ctx.torus_right_.assign(static_cast<std::size_t>(m) * n, -1);
        for (int t = 0; t < m; ++t) {
            const GroupElem mt = ctx.torus_matrix(t);
            const std::size_t base = static_cast<std::size_t>(t) * n;
            for (int x = 0; x < n; ++x) {
                ctx.torus_left_[base + x] = ctx.id_of(ctx.mul_elem(mt, ctx.elements_[x]));
                ctx.torus_right_[base + x] = ctx.id_of(ctx.mul_elem(ctx.elements_[x], mt));
            }
        }
        ctx.has_torus_tables_ = true;
    }

    return ctx;
}

int Gl2Ctx::id_of(GroupElem g) const {
    const int q = field_.q();
    return index_of_[((g.a * q + g.b) * q + g.c) * q + g.d];
}

GroupElem Gl2Ctx::mul_elem(GroupElem x, GroupElem y) const {
    const FieldCtx& f = field_;
    return make_elem(f.add(f.mul(x.a, y.a), f.mul(x.b, y.c)), f.add(f.mul(x.a, y.b), f.mul(x.b, y.d)),
                     f.add(f.mul(x.c, y.a), f.mul(x.d, y.c)), f.add(f.mul(x.c, y.b), f.mul(x.d, y.d)));
}

int Gl2Ctx::diag_id(int a, int d) const {
    if (a % field_.q() == 0 || d % field_.q() == 0) {
        throw ZeroElementError("diagonal matrix needs nonzero entries");
    }
    return id_of(make_elem(a % field_.q(), 0, 0, d % field_.q()));
}

GroupElem Gl2Ctx::torus_matrix(int t) const {
    return torus_embed(field_, field_.ext_power(t));
}

int Gl2Ctx::torus_mul_left(int t, int x) const {
    if (has_torus_tables_) {
        return torus_left_[static_cast<std::size_t>(t) * element_count() + x];
    }
    return id_of(mul_elem(torus_matrix(t), elements_[x]));
}

int Gl2Ctx::torus_mul_right(int x, int t) const {
    if (has_torus_tables_) {
        return torus_right_[static_cast<std::size_t>(t) * element_count() + x];
    }
    return id_of(mul_elem(elements_[x], torus_matrix(t)));
}

std::string Gl2Ctx::class_name(int c) const {
    const ClassLabel& label = class_labels_[c];
    switch (label.kind) {
        case ClassKind::Central:
            return "C[" + std::to_string(field_.base_power(label.p1)) + "]";
        case ClassKind::Unipotent:
            return "U[" + std::to_string(field_.base_power(label.p1)) + "]";
        case ClassKind::Split:
            return "S[" + std::to_string(field_.base_power(label.p1)) + "," +
                   std::to_string(field_.base_power(label.p2)) + "]";
        case ClassKind::Elliptic:
            return "E[" + std::to_string(label.p1) + "]";
    }
    return "?";
}

DoubleCosetTable double_coset_decomposition(const Gl2Ctx& group) {
    const int n = group.element_count();
    const int m = group.torus_size();
    DoubleCosetTable table;
    table.coset_of.assign(n, -1);

    auto close_orbit = [&](int seed, int coset_id) {
        std::vector<int> stack{seed};
        table.coset_of[seed] = coset_id;
        long long size = 0;
        while (!stack.empty()) {
            const int x = stack.back();
            stack.pop_back();
            ++size;
            for (int t = 0; t < m; ++t) {
                const int l = group.torus_mul_left(t, x);
                if (table.coset_of[l] < 0) {
                    table.coset_of[l] = coset_id;
                    stack.push_back(l);
                }
                const int r = group.torus_mul_right(x, t);
                if (table.coset_of[r] < 0) {
                    table.coset_of[r] = coset_id;
                    stack.push_back(r);
                }
            }
        }
        table.sizes.push_back(size);
    };

    table.rep_ids.push_back(group.identity_id());
    close_orbit(group.identity_id(), 0);
    for (int id = 0; id < n; ++id) {
        if (table.coset_of[id] >= 0) continue;
        const int coset_id = table.count();
        table.rep_ids.push_back(id);
        close_orbit(id, coset_id);
    }

    const int q = group.field().q();
    table.diagonal_as.assign(table.count(), {});
    table.diag_coset.assign(q, -1);
    for (int a = 1; a < q; ++a) {
        const int coset = table.coset_of[group.diag_id(a, 1)];
        table.diag_coset[a] = coset;
        table.diagonal_as[coset].push_back(a);
    }
    return table;
}

}  // namespace th
