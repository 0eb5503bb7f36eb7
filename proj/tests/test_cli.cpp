#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "cli_runner.hpp"

#include <json.hpp>

using nlohmann::json;

TEST_CASE("basis dump: row count, residual column, reference values") {
    const auto res = cli::run("basis --n 4 --k 2 --grid 1001");
    REQUIRE(res.exit_code == 0);
    const auto rows = cli::csv_rows(res.output);
    REQUIRE(rows.size() == 1001);
    double worst = 0.0;
    for (const auto& row : rows) worst = std::max(worst, std::fabs(std::stod(row.back())));
    REQUIRE(worst <= 1e-12);

    const auto bern = cli::run("basis --family bernstein --k 3 --grid 3");
    const auto brows = cli::csv_rows(bern.output);
    REQUIRE(brows.size() == 3);
    // row at x = 1/2: binomial values 1/8, 3/8, 3/8, 1/8
    REQUIRE(std::stod(brows[1][0]) == Catch::Approx(0.5));
    REQUIRE(std::stod(brows[1][1]) == Catch::Approx(0.125).margin(1e-13));
    REQUIRE(std::stod(brows[1][2]) == Catch::Approx(0.375).margin(1e-13));
    REQUIRE(std::stod(brows[1][3]) == Catch::Approx(0.375).margin(1e-13));
    REQUIRE(std::stod(brows[1][4]) == Catch::Approx(0.125).margin(1e-13));
}

TEST_CASE("basis rejects unknown function names with exit code 2") {
    REQUIRE(cli::run("basis --n 4 --k 2 --f bogus").exit_code == 2);
}

TEST_CASE("spectrum output carries gamma, multiplicity, and the Gershgorin verdict") {
    const auto res = cli::run("spectrum --family bernstein --k 3");
    REQUIRE(res.exit_code == 0);
    REQUIRE(std::stod(cli::comment_value(res.output, "gamma")) ==
            Catch::Approx(2.0 / 3).margin(1e-6));
    REQUIRE(cli::comment_value(res.output, "one_multiplicity") == "2");
    REQUIRE(cli::comment_value(res.output, "gershgorin") == "pass");
    REQUIRE(cli::comment_value(res.output, "projector") == "false");
}

TEST_CASE("spectrum flags the projector case for hats") {
    const auto res = cli::run("spectrum --n 5 --k 1 --format json");
    REQUIRE(res.exit_code == 0);
    const json doc = json::parse(res.output);
    REQUIRE(doc["projector"] == true);
    REQUIRE(doc["one_multiplicity"] == 6);
    REQUIRE(doc["gershgorin"] == "pass");
}

TEST_CASE("iterates report the fitted decay rate next to gamma") {
    const auto res = cli::run("iterates --family bernstein --k 3 --f x2 --m 1..30 --grid 2001");
    REQUIRE(res.exit_code == 0);
    const double ratio = std::stod(cli::comment_value(res.output, "rho_over_gamma"));
    REQUIRE(ratio >= 0.95);
    REQUIRE(ratio <= 1.03);
    // distances are monotone nonincreasing for x^2 on the Bernstein vector
    const auto rows = cli::csv_rows(res.output);
    REQUIRE(rows.size() == 30);
    double prev = std::stod(rows[0][1]);
    for (const auto& row : rows) {
        const double d = std::stod(row[1]);
        REQUIRE(d <= prev + 1e-15);
        prev = d;
    }
}

TEST_CASE("iterates of a fixed function print zero distances and no fit") {
    const auto res = cli::run("iterates --n 4 --k 2 --f id --m 1..8 --grid 501");
    REQUIRE(res.exit_code == 0);
    for (const auto& row : cli::csv_rows(res.output))
        REQUIRE(std::stod(row[1]) <= 1e-13);
    REQUIRE(res.output.find("fit_note") != std::string::npos);
}

TEST_CASE("modulus subcommand emits one row per function") {
    const auto res = cli::run("modulus --f x2 --f kink --r 2 --t 0.1");
    REQUIRE(res.exit_code == 0);
    const auto rows = cli::csv_rows(res.output);
    REQUIRE(rows.size() == 2);
    REQUIRE(std::stod(rows[0][5]) == Catch::Approx(0.02).epsilon(1e-9));
    REQUIRE(std::stod(rows[1][5]) == Catch::Approx(0.2).margin(1e-6));
    REQUIRE(cli::run("modulus --f x2 --r 2").exit_code == 2);  // missing --t
}

TEST_CASE("bounds emits a JSON report and exit code 0 when all verdicts pass") {
    const auto res = cli::run("bounds --family bernstein --k 3 --f x2");
    REQUIRE(res.exit_code == 0);
    const json doc = json::parse(res.output);
    REQUIRE(doc["report"]["all_pass"] == true);
    REQUIRE(doc["report"]["verdicts"]["lower_at_delta"]["status"] == "pass");
    REQUIRE(doc["report"]["verdicts"]["upper_beutel"]["status"] == "pass");
    REQUIRE(doc["report"]["dk_used"] == 24.0);

    const auto kink = cli::run("bounds --n 8 --k 3 --f kink");
    REQUIRE(kink.exit_code == 0);
    REQUIRE(json::parse(kink.output)["report"]["all_pass"] == true);
}

TEST_CASE("bounds usage errors exit with code 2") {
    REQUIRE(cli::run("bounds --n 4 --k 2 --f x2").exit_code == 2);  // requires k > r
    REQUIRE(cli::run("bounds --n 4 --k 1 --f x2").exit_code == 2);  // projector case
    REQUIRE(cli::run("bounds --n 4 --k 3 --f x2 --format csv").exit_code == 2);
    REQUIRE(cli::run("bounds --n 4 --k 3").exit_code == 2);  // missing --f
}

TEST_CASE("sweep emits one row per cell and tolerates sub-threshold degrees") {
    const auto res = cli::run("sweep --family bernstein --k 2..4");
    REQUIRE(res.exit_code == 0);
    const auto rows = cli::csv_rows(res.output);
    REQUIRE(rows.size() == 3);
    REQUIRE(rows[0][7] == "ok (delta requires k > r)");
    REQUIRE(rows[1][7] == "ok");
    REQUIRE(std::stod(rows[1][3]) == Catch::Approx(2.0 / 3).margin(1e-6));

    const auto geo = cli::run("sweep --family geometric:0.5 --n 8 --k 3");
    REQUIRE(geo.exit_code == 0);
    REQUIRE(cli::csv_rows(geo.output).size() == 1);

    REQUIRE(cli::run("sweep --family uniform --n 2..4 --k 2..4").exit_code == 2);
    REQUIRE(cli::run("sweep --family nosuch --n 4 --k 3").exit_code == 2);
}

TEST_CASE("usage errors exit with code 2") {
    REQUIRE(cli::run("spectrum --k 3").exit_code == 2);            // knot spec missing
    REQUIRE(cli::run("spectrum --n 4").exit_code == 2);            // degree missing
    REQUIRE(cli::run("iterates --n 4 --k 2").exit_code == 2);      // function missing
    REQUIRE(cli::run("spectrum --n 4 --k 2 --format xml").exit_code == 2);
    REQUIRE(cli::run("nosuchcommand").exit_code == 2);
}

TEST_CASE("identical invocations produce byte-identical output") {
    const std::vector<std::string> invocations = {
        "spectrum --n 6 --k 3",
        "iterates --n 4 --k 3 --f runge --m 1..10 --grid 501",
        "sweep --family random --n 6 --k 3 --seed 7",
        "bounds --n 4 --k 3 --f sqrt",
    };
    for (const std::string& args : invocations) {
        const auto a = cli::run(args);
        const auto b = cli::run(args);
        REQUIRE(a.exit_code == b.exit_code);
        REQUIRE(a.output == b.output);
    }
}
