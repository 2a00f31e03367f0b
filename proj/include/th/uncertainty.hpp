#pragma once

#include <string>
#include <vector>

#include "th/harmonics.hpp"

namespace th {

// Support data for the product inequality |supp f| * (sum of degrees over
// the transform support) >= |G|, which holds for every nonzero twisted
// bi-equivariant function.
struct UncertaintyRecord {
    CharLabel phi;
    long long support_size = 0;
    long long fourier_degree_sum = 0;
    long long product = 0;
    long long bound = 0;  // |G|
    long long margin = 0; // product - bound
    bool extremal = false;
};

// Constituent labels whose transform block is nonzero. Labels are reported
// on the constituent side (the pinned Hilbert-Schmidt quantity is evaluated
// at the contragredient), so the result is always a subset of the
// decomposition of the induced module. ZeroFunctionError when f vanishes.
std::vector<int> fourier_support(const CharacterTable& table, const HeckeFunction& f,
                                 double tol = kFourierSupportTol);

// Builds the record for one function: canonical cleaning at 1e-8, support
// count, transform support, and the integer margin.
UncertaintyRecord uncertainty_check(const CharacterTable& table, const HeckeFunction& f);

struct ExtremalCandidate {
    std::string name;
    UncertaintyRecord record;
};

// Every natural basis function of the twisted algebra: the idempotent, one
// bi-equivariant indicator per double coset (skipped when the twist kills
// it), and every spherical function. Records are returned for all of them.
std::vector<ExtremalCandidate> uncertainty_scan(const CharacterTable& table,
                                                const DoubleCosetTable& cosets, CharLabel Phi);

// The margin-zero subset of uncertainty_scan.
std::vector<ExtremalCandidate> extremal_scan(const CharacterTable& table,
                                             const DoubleCosetTable& cosets, CharLabel Phi);

// Slack in the two inequalities chained by the product bound, nonnegative
// up to roundoff when the bound holds:
//   sup-norm bound:  (1/|G|^2) sum_pi d_pi ||pi block|| - max|f|
//   support bound:   max|f|^2 * |supp f| - sum|f|^2
double transform_sup_bound_margin(const CharacterTable& table, const HeckeFunction& f);
double support_l2_bound_margin(const GroupFunction& f);

}  // namespace th
