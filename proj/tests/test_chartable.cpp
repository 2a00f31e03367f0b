#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "th/chartable.hpp"
#include "th/errors.hpp"
#include "test_util.hpp"

using th::CharLabel;
using th::CharacterTable;
using th::Family;
using th::FieldCtx;
using th::IrrepLabel;
using th::cplx;

namespace {

int family_count(const CharacterTable& t, Family f) {
    int n = 0;
    for (int i = 0; i < t.irrep_count(); ++i)
        if (t.irrep(i).family == f) ++n;
    return n;
}

}  // namespace

TEST_CASE("table shape and degree identity") {
    for (int q : {3, 5, 7}) {
        const auto& table = shared_table(q);
        const auto& group = shared_group(q);
        CHECK(table.irrep_count() == q * q - 1);
        CHECK(group.class_count() == q * q - 1);
        CHECK(family_count(table, Family::OneDim) == q - 1);
        CHECK(family_count(table, Family::Steinberg) == q - 1);
        CHECK(family_count(table, Family::Principal) == (q - 1) * (q - 2) / 2);
        CHECK(family_count(table, Family::Cuspidal) == q * (q - 1) / 2);
        long long d2 = 0;
        for (int i = 0; i < table.irrep_count(); ++i)
            d2 += static_cast<long long>(table.dim(i)) * table.dim(i);
        CHECK(d2 == group.order());
    }
}

TEST_CASE("orthogonality residuals are at roundoff") {
    for (int q : {3, 5, 7}) {
        const auto& table = shared_table(q);
        CHECK(table.row_orthogonality_residual() < 1e-10);
        CHECK(table.column_orthogonality_residual() < 1e-10);
    }
}

TEST_CASE("a too tight validation tolerance rejects the table") {
    const auto& group = shared_group(3);
    CHECK_THROWS_AS(CharacterTable::build(group, 1e-18), th::ValidationFailedError);
}

TEST_CASE("labels round trip through index_of") {
    const auto& table = shared_table(5);
    for (int i = 0; i < table.irrep_count(); ++i) CHECK(table.index_of(table.irrep(i)) == i);
    CHECK(table.index_of(IrrepLabel{Family::Cuspidal, 5, 1}) == -1);
    CHECK(table.index_of(IrrepLabel{Family::Principal, 2, 2}) == -1);
}

TEST_CASE("irrep naming follows the compact scheme") {
    CHECK(th::irrep_name(IrrepLabel{Family::OneDim, 0, 0}) == "one[0]");
    CHECK(th::irrep_name(IrrepLabel{Family::Steinberg, 1, 0}) == "st[1]");
    CHECK(th::irrep_name(IrrepLabel{Family::Principal, 0, 1}) == "pr[0,1]");
    CHECK(th::irrep_name(IrrepLabel{Family::Cuspidal, 1, 3}) == "cu[1]");
}

TEST_CASE("q=3 frozen values for the cuspidal family") {
    const auto& table = shared_table(3);
    const auto& group = shared_group(3);
    const auto& F = group.field();
    const int cu1 = table.index_of(IrrepLabel{Family::Cuspidal, 1, 3});
    REQUIRE(cu1 >= 0);
    CHECK(table.dim(cu1) == 2);

    // Central class at a = 2 = gF: (q-1) lambda(a) with lambda the sign.
    const int central2 = group.class_of(group.diag_id(2, 2));
    CHECK(std::abs(table.value(cu1, central2) - cplx(-2.0, 0.0)) < 1e-12);

    // Unipotent at a = 1: -lambda(1) = -1.
    const int unip = group.class_of(group.id_of({1, 1, 0, 1}));
    CHECK(std::abs(table.value(cu1, unip) - cplx(-1.0, 0.0)) < 1e-12);

    // Elliptic at t = 1: -(Lambda(z) + Lambda(z^q)) for z = gE.
    const double tau = 2.0 * std::numbers::pi / 8.0;
    const cplx expected = -(std::polar(1.0, tau) + std::polar(1.0, 3.0 * tau));
    CHECK(std::abs(table.torus_value(cu1, 1) - expected) < 1e-12);

    // Split classes vanish for cuspidals.
    const int split = group.class_of(group.diag_id(1, 2));
    CHECK(std::abs(table.value(cu1, split)) < 1e-12);
    (void)F;
}

TEST_CASE("torus patterns match an inline recomputation") {
    const auto& F = shared_field(3);
    // Principal pattern with alpha the sign character and beta trivial, at a
    // base point: (q+1) alpha(z) beta(z).
    CHECK(std::abs(th::principal_pattern_on_torus(F, F.base_char(1), F.base_char(0), 4) -
                   cplx(-4.0, 0.0)) < 1e-12);
    // Elliptic points give zero.
    CHECK(std::abs(th::principal_pattern_on_torus(F, F.base_char(1), F.base_char(0), 1)) < 1e-12);
    // Cuspidal pattern at an elliptic point.
    const double tau = 2.0 * std::numbers::pi / 8.0;
    const cplx expected = -(std::polar(1.0, tau) + std::polar(1.0, 3.0 * tau));
    CHECK(std::abs(th::cuspidal_pattern_on_torus(F, F.ext_char(1), 1) - expected) < 1e-12);
    // Cuspidal pattern at a base point: (q-1) times the restriction value.
    CHECK(std::abs(th::cuspidal_pattern_on_torus(F, F.ext_char(1), 4) - cplx(-2.0, 0.0)) < 1e-12);
}

TEST_CASE("restrictions to the torus match their closed patterns") {
    for (int q : {3, 5}) {
        const auto& table = shared_table(q);
        const auto& F = shared_group(q).field();
        for (int j : {0, 1, 2}) {
            CHECK(th::twist_identity_residual(table, F.ext_char(j)) < 1e-9);
        }
    }
}

TEST_CASE("conjugate_irrep is an involution matching conjugate characters") {
    for (int q : {3, 5}) {
        const auto& table = shared_table(q);
        const int classes = shared_group(q).class_count();
        for (int i = 0; i < table.irrep_count(); ++i) {
            const int c = th::conjugate_irrep(table, i);
            CHECK(th::conjugate_irrep(table, c) == i);
            CHECK(table.dim(c) == table.dim(i));
            for (int cls = 0; cls < classes; ++cls) {
                CHECK(std::abs(table.value(c, cls) - std::conj(table.value(i, cls))) < 1e-12);
            }
        }
    }
}

TEST_CASE("q=3 conjugation pairs are the expected ones") {
    const auto& table = shared_table(3);
    const int cu1 = table.index_of(IrrepLabel{Family::Cuspidal, 1, 3});
    const int cu5 = table.index_of(IrrepLabel{Family::Cuspidal, 5, 7});
    const int cu2 = table.index_of(IrrepLabel{Family::Cuspidal, 2, 6});
    const int pr01 = table.index_of(IrrepLabel{Family::Principal, 0, 1});
    const int one1 = table.index_of(IrrepLabel{Family::OneDim, 1, 1});
    CHECK(th::conjugate_irrep(table, cu1) == cu5);
    CHECK(th::conjugate_irrep(table, cu5) == cu1);
    CHECK(th::conjugate_irrep(table, cu2) == cu2);
    CHECK(th::conjugate_irrep(table, pr01) == pr01);
    CHECK(th::conjugate_irrep(table, one1) == one1);
}
