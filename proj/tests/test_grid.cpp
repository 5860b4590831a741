#include <doctest.h>

#include <string>
#include <vector>

#include "semloss/fixtures.hpp"
#include "semloss/grid.hpp"
#include "semloss/grid_csv.hpp"
#include "test_util.hpp"

using namespace semloss;
using testutil::fresh_dir;
using testutil::slurp;
using testutil::spit;

namespace {

std::string canonical_table1_csv() { return grid_csv_string(fixture_table1()); }

AccuracyGrid load_from_string(const std::string& csv, const std::string& tag) {
    const auto dir = fresh_dir("grid_" + tag);
    const auto path = dir / "grid.csv";
    spit(path, csv);
    return load_grid_csv(path.string());
}

} // namespace

TEST_CASE("grid CSV ingestion reproduces the embedded accuracy table") {
    const AccuracyGrid grid = load_from_string(canonical_table1_csv(), "t1");
    REQUIRE(grid.n_q() == 10);
    REQUIRE(grid.n_s() == 4);
    CHECK(grid.q_axis.front() == 10.0);
    CHECK(grid.q_axis.back() == 100.0);
    CHECK(grid.s_axis[0] == 0.41);
    // [q=10, s=0.41]
    CHECK(grid.values[0][0] == 81.94);
}

TEST_CASE("constant 2x2 grid loads verbatim") {
    const AccuracyGrid grid =
        load_from_string("q\\s,1,2\n10,50.0,50.0\n20,50.0,50.0\n", "const");
    REQUIRE(grid.n_cells() == 4);
    for (const auto& row : grid.values)
        for (double v : row) CHECK(v == 50.0);
}

TEST_CASE("malformed grid CSVs are rejected with located errors") {
    SUBCASE("ragged row") {
        CHECK_THROWS_WITH_AS(load_from_string("q\\s,1,2\n10,50\n", "ragged"),
                             doctest::Contains("ragged"), input_error);
    }
    SUBCASE("bad corner cell") {
        CHECK_THROWS_AS(load_from_string("foo,1,2\n10,50,50\n20,50,50\n", "corner"),
                        input_error);
    }
    SUBCASE("non-numeric cell names its location") {
        CHECK_THROWS_WITH_AS(load_from_string("q\\s,1,2\n10,abc,50\n20,50,50\n", "nonnum"),
                             doctest::Contains("row"), input_error);
    }
    SUBCASE("non-increasing q axis") {
        CHECK_THROWS_AS(load_from_string("q\\s,1,2\n20,50,50\n10,50,50\n", "qorder"),
                        input_error);
    }
    SUBCASE("non-increasing s axis") {
        CHECK_THROWS_AS(load_from_string("q\\s,2,1\n10,50,50\n20,50,50\n", "sorder"),
                        input_error);
    }
    SUBCASE("accuracy outside [0, 100]") {
        CHECK_THROWS_AS(load_from_string("q\\s,1,2\n10,50,101\n20,50,50\n", "range"),
                        input_error);
    }
    SUBCASE("missing file") {
        CHECK_THROWS_AS(load_grid_csv("/nonexistent/nowhere.csv"), input_error);
    }
}

TEST_CASE("CSV round trip is byte-exact") {
    // Decimal inputs with up to six fractional digits survive a load/serialize
    // cycle bit-exactly; shortest-round-trip formatting guarantees it.
    const std::string original =
        "q\\s,0.41,0.82,1.23\n10,81.94,0,99.999999\n20,81.945601,50.5,100\n";
    const AccuracyGrid first = load_from_string(original, "rt1");
    const std::string emitted = grid_csv_string(first);
    const AccuracyGrid second = load_from_string(emitted, "rt2");
    CHECK(emitted == grid_csv_string(second));
    REQUIRE(first.n_cells() == second.n_cells());
    for (std::size_t i = 0; i < first.n_s(); ++i)
        for (std::size_t j = 0; j < first.n_q(); ++j)
            CHECK(first.values[i][j] == second.values[i][j]);

    SUBCASE("write_grid_csv and load_grid_csv invert each other") {
        const auto dir = fresh_dir("grid_rt_file");
        const auto path = dir / "echo.csv";
        write_grid_csv(first, path.string());
        CHECK(slurp(path) == emitted);
    }
}

TEST_CASE("column extraction yields the expected slice") {
    const AccuracyGrid grid = fixture_table1();
    const Series1D col = column_series(grid, 0);
    const std::vector<double> expected = {81.94, 83.92, 84.95, 85.67, 85.99,
                                          86.17, 86.23, 86.28, 86.32, 86.39};
    REQUIRE(col.size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) CHECK(col.y[i] == expected[i]);
    CHECK(col.x == grid.q_axis);
    CHECK(col.label.find("0.41") != std::string::npos);
}

TEST_CASE("column extraction on a constant grid is constant") {
    const AccuracyGrid grid =
        load_from_string("q\\s,1,2\n10,50.0,50.0\n20,50.0,50.0\n", "constcol");
    for (std::size_t k = 0; k < grid.n_s(); ++k)
        for (double v : column_series(grid, k).y) CHECK(v == 50.0);
}

TEST_CASE("column extraction rejects an out-of-range index") {
    CHECK_THROWS_AS(column_series(fixture_table1(), 7), input_error);
}

TEST_CASE("grid validation enforces the documented invariants") {
    AccuracyGrid g = fixture_table1();
    SUBCASE("rectangularity") {
        g.values[1].pop_back();
        CHECK_THROWS_AS(validate_grid(g), input_error);
    }
    SUBCASE("axis positivity") {
        g.q_axis[0] = -1.0;
        CHECK_THROWS_AS(validate_grid(g), input_error);
    }
    SUBCASE("finite values") {
        g.values[2][3] = std::numeric_limits<double>::quiet_NaN();
        CHECK_THROWS_AS(validate_grid(g), input_error);
    }
}

TEST_CASE("series validation enforces the documented invariants") {
    SUBCASE("length mismatch") {
        Series1D s{{1, 2, 3}, {1, 2}, "bad"};
        CHECK_THROWS_AS(validate_series(s), input_error);
    }
    SUBCASE("too short") {
        Series1D s{{1}, {1}, "bad"};
        CHECK_THROWS_AS(validate_series(s), input_error);
    }
    SUBCASE("x not strictly increasing") {
        Series1D s{{1, 1, 2}, {1, 2, 3}, "bad"};
        CHECK_THROWS_AS(validate_series(s), input_error);
    }
    SUBCASE("non-finite ordinate") {
        Series1D s{{1, 2}, {1, std::numeric_limits<double>::infinity()}, "bad"};
        CHECK_THROWS_AS(validate_series(s), input_error);
    }
}
