#pragma once

#include <utility>
#include <vector>

#include "th/hecke.hpp"

namespace th {

// Multiplicity of an irreducible in Ind_K^G Phi through the Frobenius
// reciprocity sum (1/|K|) sum_z conj(Phi(z)) chi(m_z). The plain sum is
// checked against the symmetrized half sum over {Phi, Phi^q} (residual
// 1e-9) and must round to an integer within 1e-6, otherwise
// NonIntegralMultiplicityError.
int multiplicity(const CharacterTable& table, int irrep, CharLabel Phi);

// Multiplicities for every irreducible, in table order.
std::vector<int> decompose_induced(const CharacterTable& table, CharLabel Phi);

// Irreducibles with multiplicity one, in table order.
std::vector<int> constituents(const CharacterTable& table, CharLabel Phi);

// The closed-form multiplicity prediction:
//   OneDim(alpha)        delta_{alpha^2, phi}
//   Steinberg(alpha)     delta_{alpha^2, phi} - delta_{alpha o N, Phi}
//   Principal{a,b}       delta_{ab, phi}
//   Cuspidal{L, L^q}     delta_{lambda, phi} - delta_{L, Phi} - delta_{L^q, Phi}
// where phi, lambda are restrictions to F^x. Applied verbatim, including
// the rows the oracle refutes; see the findings report.
int predicted_multiplicity(const FieldCtx& field, const IrrepLabel& irrep, CharLabel Phi);

struct DecompositionRow {
    IrrepLabel irrep;
    int dim = 0;
    int mult_oracle = 0;
    int mult_predicted = 0;
};
std::vector<DecompositionRow> verify_decomposition(const CharacterTable& table, CharLabel Phi);

// Multiplicities in Ind 1 of the virtual combinations Steinberg(alpha) +-
// OneDim(alpha), evaluated as signed oracle sums.
int virtual_sum_multiplicity(const CharacterTable& table, CharLabel alpha);
int virtual_diff_multiplicity(const CharacterTable& table, CharLabel alpha);

struct SphericalFunction {
    CharLabel phi;
    int irrep = -1;
    GroupFunction values;            // normalized so that values[e] = 1
    std::vector<cplx> coset_values;  // value at each double-coset representative
};

// h = P_Phi(chi_pi) normalized at the identity. NotAConstituentError when
// the projection vanishes there, which happens exactly at multiplicity 0.
SphericalFunction spherical_via_averaging(const CharacterTable& table,
                                          const DoubleCosetTable& cosets, CharLabel Phi,
                                          int irrep);

// max over the given pairs (x, y) of
// |h(x)h(y) - (1/|K|) sum_k conj(Phi(k)) h(x k y)|.
double functional_equation_residual(const Gl2Ctx& group, CharLabel Phi, const GroupFunction& h,
                                    const std::vector<std::pair<int, int>>& pairs);

// The trace constraint of the explicit spherical formula admits two
// readings of its coefficient; the second is the diagnostic inversion.
enum class TraceCoefficient { TwoOverAPlusOne, APlusOneOverTwo };

// All pairs (z, w) in E^x x E^x with N(w) = a N(z) and Tr(w) = c Tr(z),
// c the selected coefficient, as discrete-log pairs in scan order.
// SingularParameterError at a = -1 where the coefficient is undefined.
std::vector<std::pair<int, int>> gamma_set(const FieldCtx& field, int a,
                                           TraceCoefficient coeff = TraceCoefficient::TwoOverAPlusOne);

// -(q^2-1)^{-1} sum over the pair set of Phi^{-1}(z) Lambda(w), plus the
// correction q/(q+1) at a = 1 when the restrictions of Lambda and Phi to
// F^x agree. Lambda must not be Frobenius-fixed.
cplx spherical_explicit(const FieldCtx& field, CharLabel Phi, CharLabel Lambda, int a,
                        TraceCoefficient coeff = TraceCoefficient::TwoOverAPlusOne);

// Candidate values for the norm-one-circle form of the cuspidal spherical
// function at Phi = 1. The printed formula leaves the factor (eps omega)(u)
// ambiguous; the enum selects how it is read. ome = Lambda restricted to U,
// and eps(0) evaluates to 0 throughout.
enum class KatzInterpretation {
    OmegaOnly = 0,           // omega(u)
    SignOfTrace = 1,         // eps(Tr u) omega(u)
    SignOfTracePlusTwo = 2,  // eps(2 + Tr u) omega(u)
    SignOfTraceMinusTwo = 3, // eps(2 - Tr u) omega(u)
};
cplx katz_candidate(const FieldCtx& field, CharLabel Lambda, int a, KatzInterpretation interp);

// One sparse random class function: a Gaussian combination of three
// conjugacy-class indicators.
GroupFunction random_central_function(const Gl2Ctx& group, std::uint64_t seed);

// | P_Phi(u * v) - P_Phi(u) * P_Phi(v) | in the sup norm.
double center_multiplicativity_residual(const Gl2Ctx& group, CharLabel Phi,
                                        const GroupFunction& u, const GroupFunction& v);

// Rank of { P_Phi(class indicator) } over all classes.
int center_image_dimension(const CharacterTable& table, CharLabel Phi, double tol = 1e-8);

// Reconstruction through the one-dimensional spherical lines: for twisted f
// the pi component equals (d_pi/|G|) trace_pi(f) times the normalized
// spherical function. O(constituents * |G|) given the basis.
GroupFunction reconstruct_via_spherical(const CharacterTable& table, const HeckeFunction& f,
                                        const std::vector<SphericalFunction>& basis);

}  // namespace th
