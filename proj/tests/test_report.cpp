#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <string>

#include <nlohmann/json.hpp>

#include "th/errors.hpp"
#include "th/report.hpp"
#include "test_util.hpp"

using th::CharLabel;
using th::OutputTable;
using th::RunConfig;

namespace {

const th::DoubleCosetTable& shared_cosets(int q) {
    static std::map<int, th::DoubleCosetTable> cache;
    auto it = cache.find(q);
    if (it == cache.end()) it = cache.emplace(q, th::double_coset_decomposition(shared_group(q))).first;
    return it->second;
}

}  // namespace

TEST_CASE("configuration validation") {
    RunConfig ok;
    ok.qs = {3, 5};
    CHECK_NOTHROW(ok.validate());

    RunConfig bad = ok;
    bad.qs = {4};
    CHECK_THROWS_AS(bad.validate(), th::ConfigError);
    bad.qs = {2};
    CHECK_THROWS_AS(bad.validate(), th::ConfigError);
    bad.qs = {37};
    CHECK_THROWS_AS(bad.validate(), th::ConfigError);
    bad.qs = {};
    CHECK_THROWS_AS(bad.validate(), th::ConfigError);

    bad = ok;
    bad.tolerance = 1e-20;
    CHECK_THROWS_AS(bad.validate(), th::ConfigError);
    bad.tolerance = 1e-2;
    CHECK_THROWS_AS(bad.validate(), th::ConfigError);

    bad = ok;
    bad.format = "xml";
    CHECK_THROWS_AS(bad.validate(), th::ConfigError);
}

TEST_CASE("fixed-point text forms") {
    CHECK(th::format_real(0.0) == "0");
    CHECK(th::format_real(-0.0) == "0");
    CHECK(th::format_real(1.5) == "1.5");
    CHECK(th::format_real(-2.0 / 3.0) == "-0.666666666667");
    CHECK(th::format_complex(th::cplx(1.0, -0.5)) == "1:-0.5");
    CHECK(th::format_complex(th::cplx(0.0, 0.0)) == "0:0");
}

TEST_CASE("csv and json emitters are deterministic") {
    OutputTable t;
    t.header = {"a", "b"};
    t.rows = {{"1", "x"}, {"2", "y"}};
    CHECK(th::to_csv(t) == "a,b\n1,x\n2,y\n");
    CHECK(th::to_csv(t) == th::to_csv(t));

    const std::string js = th::to_json(t);
    CHECK(js == th::to_json(t));
    auto parsed = nlohmann::json::parse(js);
    REQUIRE(parsed.is_array());
    REQUIRE(parsed.size() == 2);
    CHECK(parsed[0]["a"] == "1");
    CHECK(parsed[1]["b"] == "y");
}

TEST_CASE("field info rows carry the frozen q=3 tower") {
    OutputTable t = th::field_info_table(shared_field(3));
    CHECK(t.header == std::vector<std::string>{"key", "value"});
    std::map<std::string, std::string> kv;
    for (const auto& row : t.rows) kv[row[0]] = row[1];
    CHECK(kv["q"] == "3");
    CHECK(kv["delta"] == "2");
    CHECK(kv["ext_generator_a"] == "1");
    CHECK(kv["ext_generator_b"] == "1");
    CHECK(kv["base_generator"] == "2");
    CHECK(kv["ext_group_order"] == "8");
}

TEST_CASE("character table export shape") {
    OutputTable t = th::chartable_table(shared_table(3));
    REQUIRE(t.header.size() == 4 + 8);
    CHECK(t.header[0] == "family");
    CHECK(t.rows.size() == 8);
    for (const auto& row : t.rows) {
        CHECK(row.size() == t.header.size());
        // Every character value is a re:im pair.
        CHECK(row[4].find(':') != std::string::npos);
    }
}

TEST_CASE("double coset export at q=3") {
    OutputTable t = th::doublecosets_table(shared_group(3), shared_cosets(3));
    REQUIRE(t.rows.size() == 3);
    CHECK(t.rows[0][1] == "8");
    CHECK(t.rows[1][1] == "8");
    CHECK(t.rows[2][1] == "32");
    CHECK(t.rows[0][6] == "1");
    CHECK(t.rows[1][6] == "2");
    CHECK(t.rows[2][6].empty());
}

TEST_CASE("decomposition export at q=3") {
    OutputTable t = th::decompose_table(shared_table(3), shared_field(3).trivial_ext());
    REQUIRE(t.rows.size() == 8);
    int matched = 0;
    int mult_sum = 0;
    for (const auto& row : t.rows) {
        if (row[6] == "1") ++matched;
        mult_sum += row[4] == "1" ? 1 : 0;
    }
    CHECK(mult_sum == 3);  // one[0], st[1], cu[2]
    CHECK(matched >= 6);   // only one-dim rows can disagree
}

TEST_CASE("spherical export at q=3 for the untwisted cuspidal line") {
    const auto& T = shared_table(3);
    OutputTable t =
        th::spherical_table(T, shared_cosets(3), shared_field(3).trivial_ext(),
                            shared_field(3).ext_char(2));
    REQUIRE(t.rows.size() == 3);
    // Identity coset has diagonal a=1 and an explicit value matching 1.
    CHECK(t.rows[0][2] == "1");
    CHECK(t.rows[0][4] == "1");
    // The only other diagonal is a=2, the excluded pole, so no explicit value.
    CHECK(t.rows[1][4] == "n/a");
    // The diagonal-free coset carries the frozen value -1/2.
    CHECK(t.rows[2][2] == "-0.5");
    CHECK(t.rows[2][4] == "n/a");

    CHECK_THROWS_AS(th::spherical_table(T, shared_cosets(3), shared_field(3).trivial_ext(),
                                        shared_field(3).ext_char(4)),
                    th::DomainMismatchError);
}

TEST_CASE("uncertainty export rows and determinism") {
    const auto& T = shared_table(3);
    OutputTable t = th::uncertainty_table(T, shared_cosets(3), shared_field(3).trivial_ext(), 5,
                                          99, true);
    OutputTable t2 = th::uncertainty_table(T, shared_cosets(3), shared_field(3).trivial_ext(), 5,
                                           99, true);
    CHECK(th::to_csv(t) == th::to_csv(t2));
    // Named scan rows (idempotent, 3 cosets, 3 sphericals) plus 5 draws.
    REQUIRE(t.rows.size() == 12);
    CHECK(t.rows[0][0] == "idempotent");
    for (const auto& row : t.rows) {
        long long margin = std::stoll(row[4]);
        CHECK(margin >= 0);
    }
}
