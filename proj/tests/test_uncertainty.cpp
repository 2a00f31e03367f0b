#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "th/errors.hpp"
#include "th/uncertainty.hpp"
#include "test_util.hpp"

using th::CharLabel;
using th::Family;
using th::GroupFunction;
using th::HeckeFunction;
using th::IrrepLabel;
using th::cplx;

namespace {

const th::DoubleCosetTable& shared_cosets(int q) {
    static std::map<int, th::DoubleCosetTable> cache;
    auto it = cache.find(q);
    if (it == cache.end()) it = cache.emplace(q, th::double_coset_decomposition(shared_group(q))).first;
    return it->second;
}

const th::ExtremalCandidate* find_candidate(const std::vector<th::ExtremalCandidate>& scan,
                                            const std::string& name) {
    for (const auto& c : scan)
        if (c.name == name) return &c;
    return nullptr;
}

}  // namespace

TEST_CASE("frozen q=3 coset indicator margins for the untwisted algebra") {
    const auto& T = shared_table(3);
    const auto& cosets = shared_cosets(3);
    CharLabel one = shared_field(3).trivial_ext();
    auto scan = th::uncertainty_scan(T, cosets, one);

    const auto* c0 = find_candidate(scan, "coset[0]");
    const auto* c1 = find_candidate(scan, "coset[1]");
    const auto* c2 = find_candidate(scan, "coset[2]");
    REQUIRE(c0 != nullptr);
    REQUIRE(c1 != nullptr);
    REQUIRE(c2 != nullptr);
    CHECK(c0->record.margin == 0);
    CHECK(c1->record.margin == 0);
    CHECK(c2->record.support_size == 32);
    CHECK(c2->record.fourier_degree_sum == 3);
    CHECK(c2->record.product == 96);
    CHECK(c2->record.margin == 48);
    CHECK(!c2->record.extremal);
}

TEST_CASE("the twisted idempotent is extremal for every character at q=3") {
    const auto& T = shared_table(3);
    const auto& G = shared_group(3);
    const auto& cosets = shared_cosets(3);
    for (int j = 0; j < G.field().ext_group_order(); ++j) {
        auto scan = th::uncertainty_scan(T, cosets, G.field().ext_char(j));
        const auto* eps = find_candidate(scan, "idempotent");
        REQUIRE(eps != nullptr);
        CHECK(eps->record.support_size == 8);
        CHECK(eps->record.product == 48);
        CHECK(eps->record.margin == 0);
        CHECK(eps->record.extremal);
        // Everything in the scan satisfies the bound.
        for (const auto& cand : scan) CHECK(cand.record.margin >= 0);
    }
}

TEST_CASE("the constant spherical line is the other extremal profile") {
    const auto& T = shared_table(3);
    const auto& cosets = shared_cosets(3);
    CharLabel one = shared_field(3).trivial_ext();
    const int one0 = T.index_of(IrrepLabel{Family::OneDim, 0, 0});
    th::SphericalFunction h = th::spherical_via_averaging(T, cosets, one, one0);
    th::UncertaintyRecord rec = th::uncertainty_check(T, HeckeFunction{one, h.values});
    CHECK(rec.support_size == 48);
    CHECK(rec.fourier_degree_sum == 1);
    CHECK(rec.margin == 0);
    CHECK(rec.extremal);
}

TEST_CASE("transform support reports constituent labels") {
    const auto& T = shared_table(3);
    const auto& G = shared_group(3);
    for (int j = 0; j < G.field().ext_group_order(); ++j) {
        CharLabel Phi = G.field().ext_char(j);
        auto consts = th::constituents(T, Phi);
        std::set<int> allowed(consts.begin(), consts.end());
        for (unsigned s = 0; s < 5; ++s) {
            HeckeFunction f = th::random_hecke_function(G, Phi, 700 + 10 * j + s);
            for (int i : th::fourier_support(T, f)) CHECK(allowed.count(i) == 1);
        }
    }
}

TEST_CASE("a single spherical line occupies a single transform slot") {
    const auto& T = shared_table(3);
    const auto& cosets = shared_cosets(3);
    CharLabel Phi = shared_field(3).ext_char(1);
    // cu[5] is a constituent here and is not self conjugate, so this pins
    // the label bookkeeping of the transform support.
    const int cu5 = T.index_of(IrrepLabel{Family::Cuspidal, 5, 7});
    const int pr01 = T.index_of(IrrepLabel{Family::Principal, 0, 1});
    th::SphericalFunction h = th::spherical_via_averaging(T, cosets, Phi, cu5);
    auto support = th::fourier_support(T, HeckeFunction{Phi, h.values});
    CHECK(support == std::vector<int>{cu5});

    th::SphericalFunction h2 = th::spherical_via_averaging(T, cosets, Phi, pr01);
    GroupFunction sum = h.values;
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += h2.values[i];
    auto support2 = th::fourier_support(T, HeckeFunction{Phi, sum});
    std::vector<int> expected{std::min(pr01, cu5), std::max(pr01, cu5)};
    CHECK(support2 == expected);
}

TEST_CASE("random draws keep a nonnegative margin and obey the chained bounds") {
    const auto& T = shared_table(3);
    const auto& G = shared_group(3);
    for (int j : {0, 1, 5}) {
        CharLabel Phi = G.field().ext_char(j);
        for (unsigned s = 0; s < 25; ++s) {
            HeckeFunction f = th::random_hecke_function(G, Phi, 800 + 100 * j + s);
            th::UncertaintyRecord rec = th::uncertainty_check(T, f);
            CHECK(rec.margin >= 0);
            CHECK(rec.bound == 48);
            CHECK(th::transform_sup_bound_margin(T, f) > -1e-8);
            CHECK(th::support_l2_bound_margin(f.values) > -1e-8);
        }
    }
}

TEST_CASE("degenerate inputs are rejected") {
    const auto& T = shared_table(3);
    const auto& G = shared_group(3);
    CharLabel Phi = G.field().ext_char(1);
    HeckeFunction zero{Phi, GroupFunction(static_cast<std::size_t>(G.element_count()),
                                          cplx(0.0, 0.0))};
    CHECK_THROWS_AS(th::uncertainty_check(T, zero), th::ZeroFunctionError);
    CHECK_THROWS_AS(th::fourier_support(T, zero), th::ZeroFunctionError);

    GroupFunction raw(static_cast<std::size_t>(G.element_count()), cplx(0.0, 0.0));
    raw[3] = 1.0;  // a bare point mass is not bi-equivariant
    CHECK_THROWS_AS(th::fourier_support(T, HeckeFunction{Phi, raw}),
                    th::NotBiEquivariantError);
}
