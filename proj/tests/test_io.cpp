#include "srbb/io.hpp"

#include "srbb/errors.hpp"

#include "doctest.h"

#include <cmath>

using namespace srbb;
using namespace srbb::io;

TEST_SUITE_BEGIN("io");

TEST_CASE("doubles round-trip bit-exactly")
{
    for (double v : {0.0, 1.0, -1.0 / 3.0, 6.283185307179586, 1e-300, 2.2250738585072014e-308,
                     123456789.123456789, -0.1}) {
        CHECK(parse_double(format_double(v)) == v);
    }
}

TEST_CASE("gamma table serialization")
{
    gamma::GammaParams p;
    p.alpha = 0.37;
    p.beta = 1.0;
    p.d = 3;
    p.M = 16;
    p.potential = paths::PairPotential::smooth_bump(0.8, 1.25);
    p.rng.seed = 424242;
    p.rng.chunk_size = 2048;
    const auto table = gamma::build_table(p, 5, 200);

    const std::string text = serialize_gamma_table(table);
    const auto back = parse_gamma_table(text);

    REQUIRE(back.k_max() == table.k_max());
    for (int k = 1; k <= table.k_max(); ++k) {
        CHECK(back.at(k).value == table.at(k).value);
        CHECK(back.at(k).std_error == table.at(k).std_error);
        CHECK(back.at(k).n_samples == table.at(k).n_samples);
    }
    CHECK(back.params.alpha == p.alpha);
    CHECK(back.params.potential.kind == p.potential.kind);
    CHECK(back.params.potential.strength == p.potential.strength);
    CHECK(back.params.rng.seed == p.rng.seed);
    // reserialization is byte-identical
    CHECK(serialize_gamma_table(back) == text);
}

TEST_CASE("corruption is detected")
{
    const auto table = gamma::free_gas_table(3, 1.0, 4);
    std::string text = serialize_gamma_table(table);

    SUBCASE("flipped digit in a row")
    {
        const auto pos = text.rfind("0.0");
        text[pos + 2] = '1';
        CHECK_THROWS_WITH_AS(parse_gamma_table(text), doctest::Contains("checksum"), config_error);
    }
    SUBCASE("truncated file")
    {
        text.resize(text.size() - 10);
        CHECK_THROWS_AS(parse_gamma_table(text), config_error);
    }
    SUBCASE("wrong magic")
    {
        CHECK_THROWS_AS(parse_gamma_table("# srbb = something-else v9\n"), config_error);
    }
}

TEST_CASE("grid fn serialization")
{
    const greenlab::GridSpec spec{1, 2.0, 0.25};
    greenlab::GridFn f{spec, {}};
    f.values.resize(spec.total_points());
    for (std::size_t i = 0; i < f.values.size(); ++i)
        f.values[i] = std::sin(0.7 * static_cast<double>(i)) / 3.0;

    const std::string text = serialize_grid_fn(f);
    const auto back = parse_grid_fn(text);
    CHECK(back.spec == f.spec);
    CHECK(back.values == f.values);

    std::string damaged = text;
    damaged[damaged.size() - 3] ^= 1;
    CHECK_THROWS_AS(parse_grid_fn(damaged), config_error);
}

TEST_CASE("header block strips to pure csv")
{
    const std::string h = header_block({{"a", "1"}, {"b", "two"}});
    CHECK(h == "# a = 1\n# b = two\n");
}

TEST_SUITE_END();
