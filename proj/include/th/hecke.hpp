#pragma once

#include <cstdint>
#include <vector>

#include "th/chartable.hpp"

namespace th {

// Dense complex function on G in the canonical element order.
using GroupFunction = std::vector<cplx>;

// A function together with the twisting character it is equivariant for:
// f(k g k') = Phi(k) f(g) Phi(k') for all k, k' in K.
struct HeckeFunction {
    CharLabel phi;
    GroupFunction values;
};

// Tolerance policy shared by support counting and equivariance checks.
inline constexpr double kSupportTol = 1e-8;
inline constexpr double kFourierSupportTol = 1e-12;

// (f * h)(x) = sum_y f(y) h(y^{-1} x). ContextMismatchError when either
// argument has the wrong length for the group.
GroupFunction convolve(const Gl2Ctx& group, const GroupFunction& f, const GroupFunction& h);

// f~(g) = conj(f(g^{-1})), the adjoint for the convolution algebra.
GroupFunction adjoint_function(const Gl2Ctx& group, const GroupFunction& f);

// |K|^{-1} Phi on K, zero elsewhere; the identity of the twisted algebra.
HeckeFunction epsilon_idempotent(const Gl2Ctx& group, CharLabel Phi);

// (P_Phi f)(g) = (1/|K|) sum_k Phi^{-1}(k) f(kg), the left projection;
// identical to convolution with the idempotent on the left.
GroupFunction project_P_phi(const Gl2Ctx& group, CharLabel Phi, const GroupFunction& f);
GroupFunction project_right(const Gl2Ctx& group, const GroupFunction& f, CharLabel Phi);
GroupFunction project_two_sided(const Gl2Ctx& group, CharLabel Phi, const GroupFunction& f);

// max(|eps*f - f|, |f*eps - f|) over G, zero exactly for members of the
// twisted algebra.
double bi_equivariance_residual(const Gl2Ctx& group, CharLabel Phi, const GroupFunction& f);

// e_pi * f with e_pi(g) = (d_pi/|G|) conj(chi_pi(g)).
GroupFunction isotypic_project(const CharacterTable& table, int irrep, const GroupFunction& f);

// S_c(f) = sum over the class c of f, for every class.
std::vector<cplx> class_sums(const Gl2Ctx& group, const GroupFunction& f);

// trace pi(f) = sum_g f(g) chi_pi(g) per irreducible, under the transform
// convention pi(f) = sum_g f(g) pi(g).
std::vector<cplx> character_traces(const CharacterTable& table, const GroupFunction& f);

// Hilbert-Schmidt norm squared of pi(f), computed from characters as
// sum_g (f * f~)(g) chi_pi(g). NegativeResidualError when the character sum
// has a negative real part or imaginary part beyond -1e-8; small negatives
// are clamped to zero.
double fourier_hs_norm_sq(const CharacterTable& table, int irrep, const GroupFunction& f);
std::vector<double> fourier_hs_all(const CharacterTable& table, const GroupFunction& f);

// For twisted f the operator pi(f) has rank at most one and equals a scalar
// multiple of an orthogonal rank-one projector, so its squared
// Hilbert-Schmidt norm is |trace pi(f)|^2. O(|G|) per function instead of
// O(|G|^2); cross-checked against fourier_hs_all in the tests.
std::vector<double> hecke_hs_all(const CharacterTable& table, const HeckeFunction& f);

// Reconstruction summing isotypic projections over the constituents of
// Ind Phi only. NotBiEquivariantError when f fails the equivariance check.
GroupFunction plancherel_reconstruct(const CharacterTable& table, const HeckeFunction& f,
                                     const std::vector<int>& constituents);

// Two-sided projection of a seeded standard complex Gaussian vector.
// Resamples up to 100 times if the projection vanishes, then throws
// DegenerateChannelError.
HeckeFunction random_hecke_function(const Gl2Ctx& group, CharLabel Phi, std::uint64_t seed);

// Values below tol are flushed to exact zero.
void clean_function(GroupFunction& f, double tol = kSupportTol);
long long support_size(const GroupFunction& f, double tol = kSupportTol);
double sup_norm(const GroupFunction& f);
double l2_norm_sq(const GroupFunction& f);

}  // namespace th
