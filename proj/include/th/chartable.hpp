#pragma once

#include <string>
#include <vector>

#include "th/gl2.hpp"

namespace th {

enum class Family : std::uint8_t { OneDim, Steinberg, Principal, Cuspidal };

// Irreducible representations of GL(2,q) in the four standard families,
// addressed by character indices:
//   OneDim(alpha), Steinberg(alpha):    p1 = index of alpha mod q-1.
//   Principal{alpha,beta}, alpha<beta:  p1 < p2, indices mod q-1.
//   Cuspidal{Lambda,Lambda^q}:          p1 = min(j, j*q mod (q^2-1)), p2 the
//                                       partner; (q+1) never divides j.
struct IrrepLabel {
    Family family = Family::OneDim;
    int p1 = 0;
    int p2 = 0;
    bool operator==(const IrrepLabel&) const = default;
};

int irrep_dim(const IrrepLabel& label, int q);
std::string irrep_name(const IrrepLabel& label);

// The full character table, built from closed-form family formulas and
// validated against both orthogonality relations before it is returned.
class CharacterTable {
public:
    // Throws ValidationFailedError when an orthogonality residual exceeds tol.
    static CharacterTable build(const Gl2Ctx& group, double tol = 1e-8);

    const Gl2Ctx& group() const { return *group_; }
    int irrep_count() const { return static_cast<int>(irreps_.size()); }
    const IrrepLabel& irrep(int i) const { return irreps_[i]; }
    int dim(int i) const { return dims_[i]; }
    int index_of(const IrrepLabel& label) const;  // -1 when absent
    cplx value(int irrep, int cls) const { return values_[static_cast<std::size_t>(irrep) * class_count_ + cls]; }
    cplx torus_value(int irrep, int t) const { return value(irrep, group_->class_of_torus(t)); }
    double row_orthogonality_residual() const { return row_residual_; }
    double column_orthogonality_residual() const { return column_residual_; }

private:
    CharacterTable() = default;

    const Gl2Ctx* group_ = nullptr;
    int class_count_ = 0;
    std::vector<IrrepLabel> irreps_;
    std::vector<int> dims_;
    std::vector<cplx> values_;
    double row_residual_ = 0.0;
    double column_residual_ = 0.0;
};

// Index of the contragredient (complex-conjugate) irreducible. Under the
// transform convention pi(f) = sum_g f(g) pi(g), the component of a twisted
// function attached to a constituent pi is extracted by the central
// idempotent of conjugate_irrep(pi), so support bookkeeping must pass
// through this map.
int conjugate_irrep(const CharacterTable& table, int irrep);

// Restrictions to K of the two character patterns that stay meaningful in
// the degenerate cases. For alpha != beta the principal pattern equals the
// restriction of the principal-series character; at alpha = beta it equals
// the restriction of the virtual sum Steinberg(alpha) + OneDim(alpha).
// For M not Frobenius-fixed the second pattern is the cuspidal restriction;
// at M = alpha o N it equals Steinberg(alpha) - OneDim(alpha).
cplx principal_pattern_on_torus(const FieldCtx& field, CharLabel alpha, CharLabel beta, int t);
cplx cuspidal_pattern_on_torus(const FieldCtx& field, CharLabel M, int t);

// Maximum pointwise residual, over all of K and all character parameters,
// of the four identities expanding (Phi + Phi^q) times a restricted
// character into pattern sums.
double twist_identity_residual(const CharacterTable& table, CharLabel Phi);

}  // namespace th
