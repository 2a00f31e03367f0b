#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "test_util.hpp"

using namespace th;

TEST_CASE("group enumeration") {
    CHECK(shared_group(3).order() == 48);
    CHECK(shared_group(5).order() == 480);
    CHECK(shared_group(7).order() == 2016);
    const auto& g = shared_group(3);
    // id_of of a singular matrix is -1
    CHECK(g.id_of({1, 1, 1, 1}) == -1);
    CHECK(g.id_of({0, 0, 0, 0}) == -1);
    for (int id = 0; id < g.element_count(); ++id) {
        CHECK(g.id_of(g.element(id)) == id);
        CHECK(g.mul(id, g.inverse(id)) == g.identity_id());
    }
}

TEST_CASE("torus embedding") {
    const auto& f = shared_field(3);
    CHECK(torus_embed(f, {1, 0}) == GroupElem{1, 0, 0, 1});
    CHECK(torus_embed(f, {2, 0}) == GroupElem{2, 0, 0, 2});
    CHECK(torus_embed(f, {0, 1}) == GroupElem{0, 2, 1, 0});  // delta = 2
    CHECK_THROWS_AS(torus_embed(f, {0, 0}), ZeroElementError);

    for (int q : {3, 5}) {
        const auto& field = shared_field(q);
        const auto& group = shared_group(q);
        const int m = field.ext_group_order();
        for (int s = 0; s < m; ++s) {
            for (int t = 0; t < m; ++t) {
                // z -> m_z is a homomorphism
                const int lhs = group.id_of(group.mul_elem(group.torus_matrix(s), group.torus_matrix(t)));
                CHECK(lhs == group.torus_id((s + t) % m));
            }
        }
        CHECK(group.torus_mul_left(1, 5) == group.mul(group.torus_id(1), 5));
        CHECK(group.torus_mul_right(5, 1) == group.mul(5, group.torus_id(1)));
    }
}

TEST_CASE("Mobius action") {
    const auto& f = shared_field(3);
    const ExtElem origin{0, 1};  // sqrt(delta)

    SUBCASE("identity fixes everything") {
        CHECK(mobius_act(f, {1, 0, 0, 1}, {1, 2}) == ExtElem{1, 2});
    }
    SUBCASE("points of F are rejected") {
        CHECK_THROWS_AS(mobius_act(f, {1, 0, 0, 1}, {2, 0}), DomainMismatchError);
    }
    SUBCASE("K stabilizes the origin, and nothing else does") {
        for (int q : {3, 5, 7}) {
            const auto& field = shared_field(q);
            const auto& group = shared_group(q);
            const ExtElem base{0, 1};
            std::set<int> torus_ids;
            for (int t = 0; t < field.ext_group_order(); ++t) torus_ids.insert(group.torus_id(t));
            int stabilizer = 0;
            for (int id = 0; id < group.element_count(); ++id) {
                if (mobius_act(field, group.element(id), base) == base) {
                    ++stabilizer;
                    CHECK(torus_ids.count(id) == 1);
                }
            }
            CHECK(stabilizer == field.ext_group_order());
        }
    }
    SUBCASE("antipode") {
        for (int q : {3, 5, 7}) {
            const auto& field = shared_field(q);
            const GroupElem d{static_cast<std::int8_t>(q - 1), 0, 0, 1};
            CHECK(mobius_act(field, d, {0, 1}) == ExtElem{0, q - 1});
        }
    }
    SUBCASE("left action, exhaustively at q=3") {
        const auto& group = shared_group(3);
        for (int x = 0; x < group.element_count(); x += 7) {
            for (int y = 0; y < group.element_count(); y += 5) {
                const GroupElem gx = group.element(x);
                const GroupElem gy = group.element(y);
                const ExtElem w{1, 2};
                CHECK(mobius_act(f, group.mul_elem(gx, gy), w) ==
                      mobius_act(f, gx, mobius_act(f, gy, w)));
            }
        }
    }
    SUBCASE("transitivity on H") {
        for (int q : {3, 5}) {
            const auto& field = shared_field(q);
            const auto& group = shared_group(q);
            std::set<std::pair<int, int>> orbit;
            for (int id = 0; id < group.element_count(); ++id) {
                const ExtElem w = mobius_act(field, group.element(id), {0, 1});
                orbit.insert({w.a, w.b});
            }
            CHECK(static_cast<int>(orbit.size()) == q * q - q);
        }
    }
}

TEST_CASE("distance invariant") {
    const auto& f = shared_field(3);
    SUBCASE("base cases") {
        CHECK(distance_invariant(f, {0, 1}, {0, 1}) == DistanceValue{false, 0});
        CHECK(distance_invariant(f, {0, 1}, {0, 2}) == DistanceValue{true, 0});
        // D(sqrt 2, 1 + sqrt 2) = N(-1)/N(-1-2 sqrt 2) = 1/2 = 2 mod 3
        CHECK(distance_invariant(f, {0, 1}, {1, 1}) == DistanceValue{false, 2});
        CHECK_THROWS_AS(distance_invariant(f, {1, 0}, {0, 1}), DomainMismatchError);
        CHECK(distance_name(DistanceValue{true, 0}) == "inf");
        CHECK(distance_name(DistanceValue{false, 2}) == "2");
    }
    SUBCASE("G-invariance and symmetry, exhaustively at q=3") {
        const auto& group = shared_group(3);
        std::vector<ExtElem> points;
        for (int a = 0; a < 3; ++a) {
            for (int b = 1; b < 3; ++b) points.push_back({a, b});
        }
        for (const ExtElem& z : points) {
            for (const ExtElem& w : points) {
                const DistanceValue d = distance_invariant(f, z, w);
                CHECK(distance_invariant(f, w, z) == d);
                for (int id = 0; id < group.element_count(); id += 5) {
                    const GroupElem g = group.element(id);
                    CHECK(distance_invariant(f, mobius_act(f, g, z), mobius_act(f, g, w)) == d);
                }
            }
        }
    }
}

TEST_CASE("conjugacy classes") {
    SUBCASE("classification of representatives") {
        const auto& f = shared_field(3);
        CHECK(conjugacy_class_of(f, {2, 0, 0, 2}) == ClassLabel{ClassKind::Central, 1, 1});
        CHECK(conjugacy_class_of(f, {1, 1, 0, 1}) == ClassLabel{ClassKind::Unipotent, 0, 0});
        CHECK(conjugacy_class_of(f, {1, 0, 0, 2}) == ClassLabel{ClassKind::Split, 0, 1});
        // m_z for z outside F has irreducible characteristic polynomial
        const auto& group = shared_group(3);
        for (int t = 0; t < 8; ++t) {
            const ClassLabel label = conjugacy_class_of(f, group.torus_matrix(t));
            if (t % 4 == 0) {
                CHECK(label.kind == ClassKind::Central);
            } else {
                CHECK(label.kind == ClassKind::Elliptic);
                const int tq = t * 3 % 8;
                CHECK(label.p1 == std::min(t, tq));
                CHECK(label.p2 == std::max(t, tq));
            }
            CHECK(group.class_of_torus(t) == group.class_of(group.torus_id(t)));
        }
    }
    SUBCASE("class equation") {
        for (int q : {3, 5, 7}) {
            const auto& group = shared_group(q);
            CHECK(group.class_count() == q * q - 1);
            long long total = 0;
            std::vector<long long> counted(group.class_count(), 0);
            for (int id = 0; id < group.element_count(); ++id) counted[group.class_of(id)] += 1;
            for (int c = 0; c < group.class_count(); ++c) {
                total += group.class_size(c);
                CHECK(counted[c] == group.class_size(c));
                CHECK(group.class_of(group.class_rep(c)) == c);
                const ClassKind kind = group.class_label(c).kind;
                const long long size = group.class_size(c);
                if (kind == ClassKind::Central) CHECK(size == 1);
                if (kind == ClassKind::Unipotent) CHECK(size == static_cast<long long>(q) * q - 1);
                if (kind == ClassKind::Split) CHECK(size == static_cast<long long>(q) * q + q);
                if (kind == ClassKind::Elliptic) CHECK(size == static_cast<long long>(q) * q - q);
            }
            CHECK(total == group.order());
        }
    }
    SUBCASE("conjugation preserves the computed label") {
        const auto& f = shared_field(5);
        const auto& group = shared_group(5);
        for (int id = 0; id < group.element_count(); id += 37) {
            const int cls = group.class_of(id);
            for (int h = 0; h < group.element_count(); h += 53) {
                const int conj = group.mul(group.mul(h, id), group.inverse(h));
                CHECK(group.class_of(conj) == cls);
            }
        }
        CHECK(group.class_name(0) == "C[1]");
    }
}

TEST_CASE("double cosets") {
    SUBCASE("q=3 decomposition") {
        const auto& group = shared_group(3);
        const DoubleCosetTable table = double_coset_decomposition(group);
        REQUIRE(table.count() == 3);
        CHECK(table.sizes == std::vector<long long>{8, 8, 32});
        CHECK(table.diagonal_as[0] == std::vector<int>{1});
        CHECK(table.diagonal_as[1] == std::vector<int>{2});
        CHECK(table.diagonal_as[2].empty());  // the big coset misses every d(a,1)
        CHECK(table.coset_of[group.identity_id()] == 0);
        CHECK(table.rep_ids[0] == group.identity_id());
        CHECK(table.diag_coset[1] == 0);
        CHECK(table.diag_coset[2] == 1);
    }
    SUBCASE("q=5 decomposition") {
        const auto& table = double_coset_decomposition(shared_group(5));
        REQUIRE(table.count() == 5);
        CHECK(table.sizes == std::vector<long long>{24, 144, 144, 144, 24});
        CHECK(table.diagonal_as[0] == std::vector<int>{1});
        CHECK(table.diagonal_as[1] == std::vector<int>{2, 3});
        CHECK(table.diagonal_as[2].empty());
        CHECK(table.diagonal_as[3].empty());
        CHECK(table.diagonal_as[4] == std::vector<int>{4});
    }
    SUBCASE("q=7 decomposition") {
        const auto& table = double_coset_decomposition(shared_group(7));
        REQUIRE(table.count() == 7);
        CHECK(table.sizes == std::vector<long long>{48, 384, 384, 384, 384, 48, 384});
        CHECK(table.diagonal_as[0] == std::vector<int>{1});
        CHECK(table.diagonal_as[1] == std::vector<int>{3, 5});
        CHECK(table.diagonal_as[4] == std::vector<int>{2, 4});
        CHECK(table.diagonal_as[5] == std::vector<int>{6});
    }
    SUBCASE("coset structure") {
        for (int q : {3, 5}) {
            const auto& group = shared_group(q);
            const DoubleCosetTable table = double_coset_decomposition(group);
            long long total = 0;
            for (long long s : table.sizes) total += s;
            CHECK(total == group.order());
            // K itself is the identity coset
            CHECK(table.sizes[0] == group.torus_size());
            for (int t = 0; t < group.torus_size(); ++t) {
                CHECK(table.coset_of[group.torus_id(t)] == 0);
            }
            // KgK is closed under inversion, and closed under K products
            for (int id = 0; id < group.element_count(); ++id) {
                CHECK(table.coset_of[group.inverse(id)] == table.coset_of[id]);
                CHECK(table.coset_of[group.torus_mul_left(1, id)] == table.coset_of[id]);
            }
            // d(a,1) and d(1/a,1) always share a coset
            const auto& f = group.field();
            for (int a = 1; a < q; ++a) {
                CHECK(table.diag_coset[a] == table.diag_coset[f.inv(a)]);
            }
        }
    }
}
