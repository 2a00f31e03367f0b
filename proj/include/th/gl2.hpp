#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "th/field.hpp"

namespace th {

// Matrix [[a,b],[c,d]] over F_q with nonzero determinant.
struct GroupElem {
    std::int8_t a = 0;
    std::int8_t b = 0;
    std::int8_t c = 0;
    std::int8_t d = 0;
    bool operator==(const GroupElem&) const = default;
};

enum class ClassKind : std::uint8_t { Central, Unipotent, Split, Elliptic };

// Conjugacy class parameters, stored as discrete logs:
//   Central(a), Unipotent(a): p1 = dlog of the eigenvalue a.
//   Split{a,b}: p1 < p2, dlogs of the two eigenvalues.
//   Elliptic{z,z^q}: p1 = min(t, t*q mod (q^2-1)) for z = gE^t, p2 the partner.
struct ClassLabel {
    ClassKind kind = ClassKind::Central;
    int p1 = 0;
    int p2 = 0;
    bool operator==(const ClassLabel&) const = default;
};

struct DoubleCosetTable {
    std::vector<int> rep_ids;                    // representative element id per coset
    std::vector<long long> sizes;
    std::vector<int> coset_of;                   // element id -> coset id
    std::vector<std::vector<int>> diagonal_as;   // field values a with d(a,1) in the coset
    std::vector<int> diag_coset;                 // a -> coset id of d(a,1), -1 at a=0

    int count() const { return static_cast<int>(rep_ids.size()); }
};

// The group G = GL(2,q) with its canonical element enumeration, the Coxeter
// torus K embedded through m_z = [[a, delta*b],[b, a]], conjugacy classes,
// and multiplication tables against the torus. Immutable once built.
class Gl2Ctx {
public:
    static Gl2Ctx build(const FieldCtx& field);

    const FieldCtx& field() const { return field_; }
    long long order() const { return static_cast<long long>(elements_.size()); }
    int element_count() const { return static_cast<int>(elements_.size()); }
    const GroupElem& element(int id) const { return elements_[id]; }
    int identity_id() const { return identity_id_; }

    // -1 when the matrix is singular.
    int id_of(GroupElem g) const;
    GroupElem mul_elem(GroupElem x, GroupElem y) const;
    int mul(int x, int y) const {
        if (has_mul_table_) return mul_table_[static_cast<std::size_t>(x) * elements_.size() + y];
        return id_of(mul_elem(elements_[x], elements_[y]));
    }
    int inverse(int x) const { return inverse_[x]; }
    int diag_id(int a, int d) const;

    // Torus elements are addressed by the discrete log t of z = gE^t.
    int torus_size() const { return field_.ext_group_order(); }
    GroupElem torus_matrix(int t) const;
    int torus_id(int t) const { return torus_ids_[t]; }
    int torus_mul_left(int t, int x) const;   // id of m_{gE^t} * element(x)
    int torus_mul_right(int x, int t) const;  // id of element(x) * m_{gE^t}

    int class_count() const { return static_cast<int>(class_labels_.size()); }
    const ClassLabel& class_label(int c) const { return class_labels_[c]; }
    long long class_size(int c) const { return class_sizes_[c]; }
    int class_rep(int c) const { return class_reps_[c]; }
    int class_of(int id) const { return class_of_[id]; }
    int class_of_torus(int t) const { return torus_class_[t]; }
    std::string class_name(int c) const;

private:
    explicit Gl2Ctx(FieldCtx f) : field_(std::move(f)) {}

    FieldCtx field_;
    std::vector<GroupElem> elements_;
    std::vector<std::int32_t> index_of_;   // q^4 slots, -1 for singular
    std::vector<std::int32_t> inverse_;
    std::vector<std::int32_t> torus_ids_;
    std::vector<ClassLabel> class_labels_;
    std::vector<long long> class_sizes_;
    std::vector<std::int32_t> class_reps_;
    std::vector<std::int32_t> class_of_;
    std::vector<std::int32_t> torus_class_;
    // Dense torus multiplication tables, built when (q^2-1)*|G| is small.
    std::vector<std::int32_t> torus_left_;
    std::vector<std::int32_t> torus_right_;
    bool has_torus_tables_ = false;
    // Full |G| x |G| multiplication table, built for q <= 7.
    std::vector<std::int32_t> mul_table_;
    bool has_mul_table_ = false;
    int identity_id_ = 0;
};

// m_z for z in E^x; ZeroElementError at z = 0.
GroupElem torus_embed(const FieldCtx& field, ExtElem z);

// g.w = (aw + b) / (cw + d) on the half plane H = E minus F.
// DomainMismatchError when w lies in F.
ExtElem mobius_act(const FieldCtx& field, GroupElem g, ExtElem w);

// D(z,w) = N(z-w)/N(z-conj(w)), infinite exactly when w = conj(z).
struct DistanceValue {
    bool infinite = false;
    int value = 0;
    bool operator==(const DistanceValue&) const = default;
};
DistanceValue distance_invariant(const FieldCtx& field, ExtElem z, ExtElem w);
std::string distance_name(const DistanceValue& d);

ClassLabel conjugacy_class_of(const FieldCtx& field, GroupElem g);

// K-double cosets by two-sided orbit closure. The identity coset (K itself)
// comes first; the rest are ordered by smallest member id.
DoubleCosetTable double_coset_decomposition(const Gl2Ctx& group);

}  // namespace th
