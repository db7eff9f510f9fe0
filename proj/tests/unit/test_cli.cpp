#include "doctest.h"

#include "lindboot/cli.hpp"
#include "lindboot/errors.hpp"

#include "json.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace lindboot;
namespace fs = std::filesystem;

namespace {

bool same_operator(const OperatorSum& a, const OperatorSum& b)
{
    OperatorSum d = a - b;
    d.prune(1e-12);
    return d.empty();
}

std::size_t parse_column(const std::string& text)
{
    try {
        parse_observable(text);
    } catch (const ParseError& e) {
        return e.column();
    }
    return 0;
}

std::string slurp(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch_dir(const std::string& name)
{
    const fs::path d = fs::temp_directory_path() / ("lindboot_cli_test_" + name);
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

} // namespace

TEST_CASE("observable grammar")
{
    const ObservableExpr z = parse_observable("Z1");
    REQUIRE(z.terms.size() == 1);
    CHECK(z.terms[0].factors[0].op == SiteOperator::Z);
    CHECK(z.terms[0].factors[0].site == 1);
    CHECK(same_operator(z.to_operator_sum(), z_site(1)));

    const ObservableExpr zz = parse_observable("Z1*Z2");
    CHECK(zz.max_site() == 2);
    CHECK(zz.to_operator_sum().support() == std::pair<int, int>{1, 2});

    const OperatorSum avg = parse_observable(" 0.5 * n1 +0.5*n 2 ").to_operator_sum();
    const OperatorSum n1 = parse_observable("n1").to_operator_sum();
    const OperatorSum n2 = parse_observable("n2").to_operator_sum();
    CHECK(same_operator(avg, 0.5 * (n1 + n2)));

    CHECK(same_operator(parse_observable("X1*X1").to_operator_sum(), identity_on(1, 1)));
    CHECK(parse_observable("-2.5*Sp3*Sm3").terms[0].coefficient == -2.5);
    CHECK(parse_observable("Sm2").terms[0].factors[0].op == SiteOperator::Sm);
}

TEST_CASE("observable parse errors carry the column")
{
    CHECK(parse_column("Q7") == 1);
    CHECK(parse_column("Z1*Q7") == 4);
    CHECK(parse_column("Z0") == 2);
    CHECK(parse_column("Z1 +") == 5);
    CHECK(parse_column("") == 1);
    CHECK(parse_column("2*") == 3);
    CHECK(parse_column("Z1 Z2") == 4);
}

TEST_CASE("site range is checked against the level")
{
    const ObservableExpr e = parse_observable("Z1*Z4");
    CHECK_NOTHROW(check_sites(e, 4));
    try {
        check_sites(e, 3);
        FAIL("expected SiteOutOfRange");
    } catch (const Error& err) {
        CHECK(err.code() == ErrorCode::SiteOutOfRange);
    }
}

TEST_CASE("settings parse lists, ranges and booleans")
{
    RunConfig c;
    apply_setting(c, "omega", "0:1:0.25");
    CHECK(c.omega == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
    apply_setting(c, "omega", "2.0");
    CHECK(c.omega == std::vector<double>{2.0});
    apply_setting(c, "n", "3, 4,5");
    CHECK(c.n == std::vector<int>{3, 4, 5});
    apply_setting(c, "realness", "off");
    CHECK_FALSE(c.solver.realness);
    apply_setting(c, "tol_feas", "1e-6");
    CHECK(c.solver.tol_feas == 1e-6);
    CHECK_THROWS_AS(apply_setting(c, "frobnicate", "1"), Error);
    CHECK_THROWS_AS(apply_setting(c, "tol_gap", "tiny"), Error);
    CHECK_THROWS_AS(apply_setting(c, "n", "3.5"), Error);
    CHECK_THROWS_AS(apply_setting(c, "omega", "1:0:0.1"), Error);
}

TEST_CASE("settings round-trip through the key table")
{
    RunConfig a;
    a.command = "gap";
    apply_setting(a, "omega", "0.1,2");
    apply_setting(a, "n", "4");
    apply_setting(a, "brent_tol", "3e-7");
    apply_setting(a, "golden_width", "0.1");
    RunConfig b;
    b.command = "gap";
    for (const auto& [k, v] : config_settings(a)) apply_setting(b, k, v);
    CHECK(config_settings(a) == config_settings(b));
    CHECK(b.gap.brent_tol == 3e-7);
    CHECK(config_settings(a).size() == config_keys().size());
}

TEST_CASE("config file diagnostics name the line")
{
    const fs::path d = scratch_dir("cfg");
    {
        std::ofstream f(d / "ok.cfg");
        f << "# comment\nomega = 1.5   # trailing\n\nn = 3\nmax_iter=50\n";
    }
    RunConfig c;
    load_config_file(c, (d / "ok.cfg").string());
    CHECK(c.omega == std::vector<double>{1.5});
    CHECK(c.solver.max_iter == 50);
    {
        std::ofstream f(d / "bad.cfg");
        f << "omega = 1\nnot a setting\n";
    }
    try {
        load_config_file(c, (d / "bad.cfg").string());
        FAIL("expected InvalidConfig");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InvalidConfig);
        CHECK(std::string(e.what()).find("bad.cfg:2") != std::string::npos);
    }
    try {
        load_config_file(c, (d / "missing.cfg").string());
        FAIL("expected IoFailure");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::IoFailure);
    }
}

TEST_CASE("configs are validated before any solve")
{
    RunConfig c;
    c.command = "steady";
    c.output_dir = (scratch_dir("validate") / "out").string();
    c.n = {3};
    CHECK_THROWS_AS(c.validate(), Error); // no coupling
    c.omega = {1.0, 2.0};
    CHECK_THROWS_AS(c.validate(), Error); // steady takes one
    c.omega = {1.0};
    CHECK_NOTHROW(c.validate());
    c.direction = "sideways";
    CHECK_THROWS_AS(c.validate(), Error);
    c.direction = "max";
    c.objective = "Z4";
    CHECK_THROWS_AS(c.validate(), Error);
    c.objective = "Z1";
    c.command = "bogus";
    CHECK_THROWS_AS(run(c, std::cout), Error);
    CHECK_FALSE(fs::exists(c.output_dir));
}

TEST_CASE("number formatting")
{
    CHECK(format_number(0.0323358821234) == "0.0323358821");
    CHECK(format_number(1.0) == "1");
    CHECK(format_number(-1e-12) == "-1e-12");
    CHECK(format_number(1.0 / 0.0) == "inf");
    CHECK(format_number(-1.0 / 0.0) == "-inf");
}

TEST_CASE("steady run writes the bounds schema and a manifest that reproduces it")
{
    const fs::path d = scratch_dir("run");
    RunConfig c;
    c.command = "scan";
    c.name = "first";
    c.omega = {0.0, 2.0};
    c.n = {3};
    c.direction = "both";
    c.timing = "off";
    c.output_dir = d.string();
    std::ostringstream log;
    CHECK(run(c, log) == 0);

    const std::string csv = slurp(d / "first.csv");
    CHECK(csv.rfind("omega,n,objective,direction,bound,status,primal,dual,iterations,seconds\n", 0) == 0);
    CHECK(csv.find("0,3,Z1,max,-1,Optimal") != std::string::npos);
    CHECK(csv.find("2,3,Z1,max,0.42048948") != std::string::npos);

    const auto manifest = nlohmann::json::parse(slurp(d / "first.manifest.json"));
    CHECK(manifest["command"] == "scan");
    CHECK(manifest["config"]["omega"] == "0,2");
    CHECK(manifest["solves"].size() == 4);
    CHECK(manifest.contains("started"));
    CHECK(manifest["versions"].contains("lindboot"));

    RunConfig again;
    load_manifest(again, (d / "first.manifest.json").string());
    again.name = "second";
    CHECK(run(again, log) == 0);
    CHECK(slurp(d / "second.csv") == csv);
}

TEST_CASE("export-sdpa writes only the problem file and manifest")
{
    const fs::path d = scratch_dir("export");
    RunConfig c;
    c.command = "export-sdpa";
    c.omega = {2.0};
    c.n = {3};
    c.output_dir = d.string();
    std::ostringstream log;
    CHECK(run(c, log) == 0);
    CHECK(fs::exists(d / "export-sdpa.dat-s"));
    CHECK(fs::exists(d / "export-sdpa.manifest.json"));
    CHECK_FALSE(fs::exists(d / "export-sdpa.csv"));
    c.direction = "both";
    CHECK_THROWS_AS(run(c, log), Error);
}
