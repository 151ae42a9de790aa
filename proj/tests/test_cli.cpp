// Command-layer tests: flag parsing helpers, per-command output in all three
// formats, exit codes, and a few end-to-end invocations of the built binary.

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <gabhull/cli.hpp>

using namespace gabhull;

namespace {

RunConfig gf16_config(Command cmd) {
    RunConfig cfg;
    cfg.command = cmd;
    cfg.p = 2;
    cfg.m = 4;
    cfg.modulus = "x^4+x+1";
    return cfg;
}

// exit status of a full binary invocation; relies on GABHULL_BIN from CMake
int run_binary(const std::string& args) {
    std::string cmd = std::string(GABHULL_BIN) + " " + args + " > /dev/null 2>&1";
    int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("range parsing accepts single values and a..b spans") {
    CHECK(parse_range("7").lo == 7);
    CHECK(parse_range("7").hi == 7);
    CHECK(parse_range("7").single());
    Range r = parse_range("2..9");
    CHECK(r.lo == 2);
    CHECK(r.hi == 9);
    CHECK_FALSE(r.single());
    CHECK(parse_range("0..0").single());
    CHECK_THROWS_AS(parse_range("9..2"), error);
    CHECK_THROWS_AS(parse_range("x"), error);
    CHECK_THROWS_AS(parse_range("3..y"), error);
    CHECK_THROWS_AS(parse_range(""), error);
    CHECK_THROWS_AS(parse_range("4..5..6"), error);
}

TEST_CASE("format and convention names parse strictly") {
    CHECK(output_format_from_string("text") == OutputFormat::text);
    CHECK(output_format_from_string("json") == OutputFormat::json);
    CHECK(output_format_from_string("csv") == OutputFormat::csv);
    CHECK_THROWS_AS(output_format_from_string("yaml"), error);
    CHECK(dual_convention_from_string("theorem") == DualConvention::second_slot);
    CHECK(dual_convention_from_string("preliminaries") == DualConvention::first_slot);
    CHECK_THROWS_AS(dual_convention_from_string("other"), error);
}

TEST_CASE("output paths resolve against the configured directory") {
    RunConfig cfg;
    CHECK(resolve_out_path(cfg).empty());
    cfg.out = "report.csv";
    CHECK(resolve_out_path(cfg) == "report.csv");
    cfg.out_dir = "/tmp/artifacts";
    CHECK(resolve_out_path(cfg) == "/tmp/artifacts/report.csv");
    cfg.out = "/abs/report.csv";
    CHECK(resolve_out_path(cfg) == "/abs/report.csv");
}

TEST_CASE("selfdual-basis prints the Gram matrix and a verified certificate") {
    RunConfig cfg = gf16_config(Command::selfdual_basis);
    std::ostringstream out;
    CHECK(run_command(cfg, out) == 0);
    std::string text = out.str();
    // trace Gram matrix of the power basis over this modulus, row by row
    CHECK(text.find("[ 0, 0, 0, 1 ]") != std::string::npos);
    CHECK(text.find("[ 0, 0, 1, 0 ]") != std::string::npos);
    CHECK(text.find("[ 0, 1, 0, 0 ]") != std::string::npos);
    CHECK(text.find("[ 1, 0, 0, 1 ]") != std::string::npos);
    CHECK(text.find("E * M * E^T = identity: yes") != std::string::npos);
    CHECK(text.find("all pairings equal delta_ij: yes") != std::string::npos);

    cfg.format = OutputFormat::json;
    std::ostringstream js;
    CHECK(run_command(cfg, js) == 0);
    json j = json::parse(js.str());
    CHECK(j["gram"] == json({{0, 0, 0, 1}, {0, 0, 1, 0}, {0, 1, 0, 0}, {1, 0, 0, 1}}));
    CHECK(j["gram_identity"] == true);
    CHECK(j["trace_pairings_identity"] == true);
    CHECK(j["basis"].size() == 4);

    // the constructed basis round-trips through --basis and is accepted
    auto f = field_make(2, 4, Poly{1, 1, 0, 0, 1});
    std::string basis_flag;
    for (const auto& el : j["basis"]) {
        if (!basis_flag.empty()) basis_flag += ";";
        basis_flag += el.get<std::string>();
    }
    RunConfig hull_cfg = gf16_config(Command::hull);
    hull_cfg.basis = basis_flag;
    hull_cfg.k = Range{2, 2};
    hull_cfg.e = Range{0, 0};
    std::ostringstream hull_out;
    CHECK(run_command(hull_cfg, hull_out) == 0);
    CHECK(hull_out.str().find("classification=LCD") != std::string::npos);
}

TEST_CASE("selfdual-basis reports nonexistence as a config error") {
    RunConfig cfg;
    cfg.command = Command::selfdual_basis;
    cfg.p = 3;
    cfg.m = 2;
    std::ostringstream out;
    CHECK(run_command(cfg, out) == 2);
    CHECK(out.str().find("requires q even, or q and m both odd") != std::string::npos);
}

TEST_CASE("matrix-shaped commands reject csv output") {
    RunConfig cfg = gf16_config(Command::selfdual_basis);
    cfg.format = OutputFormat::csv;
    std::ostringstream out;
    CHECK(run_command(cfg, out) == 2);
    cfg = gf16_config(Command::dual_gen);
    cfg.format = OutputFormat::csv;
    cfg.k = Range{2, 2};
    cfg.e = Range{1, 1};
    std::ostringstream out2;
    CHECK(run_command(cfg, out2) == 2);
}

TEST_CASE("hull emits the worked-example dimensions in every format") {
    RunConfig cfg = gf16_config(Command::hull);
    cfg.k = Range{2, 2};
    cfg.e = Range{0, 3};

    std::ostringstream text;
    CHECK(run_command(cfg, text) == 0);
    CHECK(text.str().find("e=0  hull dim: formula=0 oracle=0 agree=yes") != std::string::npos);
    CHECK(text.str().find("e=2  hull dim: formula=2 oracle=2 agree=yes") != std::string::npos);
    CHECK(text.str().find("classification=self-dual") != std::string::npos);

    cfg.format = OutputFormat::csv;
    std::ostringstream csv;
    CHECK(run_command(cfg, csv) == 0);
    std::istringstream back(csv.str());
    std::vector<HullReport> rows = read_hull_csv(back);
    REQUIRE(rows.size() == 4);
    std::vector<unsigned> dims;
    for (const auto& r : rows) dims.push_back(r.dim_oracle);
    CHECK(dims == std::vector<unsigned>{0, 1, 2, 1});

    cfg.format = OutputFormat::json;
    std::ostringstream js;
    CHECK(run_command(cfg, js) == 0);
    json arr = json::parse(js.str());
    REQUIRE(arr.size() == 4);
    for (size_t i = 0; i < 4; ++i) {
        CHECK(arr[i]["e"] == i);
        CHECK(arr[i]["dim_formula"] == dims[i]);
        CHECK(arr[i]["agree"] == true);
    }
}

TEST_CASE("hull reports the odd-characteristic example dimensions") {
    RunConfig cfg;
    cfg.command = Command::hull;
    cfg.p = 3;
    cfg.m = 5;
    cfg.k = Range{2, 2};
    cfg.e = Range{0, 4};
    cfg.format = OutputFormat::csv;
    std::ostringstream csv;
    CHECK(run_command(cfg, csv) == 0);
    std::istringstream back(csv.str());
    std::vector<HullReport> rows = read_hull_csv(back);
    REQUIRE(rows.size() == 5);
    std::vector<unsigned> dims;
    for (const auto& r : rows) {
        CHECK(r.agree);
        dims.push_back(r.dim_formula);
    }
    CHECK(dims == std::vector<unsigned>{0, 1, 2, 2, 1});
}

TEST_CASE("hull defaults cover the full k and e grid") {
    RunConfig cfg = gf16_config(Command::hull);
    cfg.format = OutputFormat::csv;
    std::ostringstream csv;
    CHECK(run_command(cfg, csv) == 0);
    std::istringstream back(csv.str());
    CHECK(read_hull_csv(back).size() == 3u * 4u);  // k in [1,3], e in [0,3]
}

TEST_CASE("first-slot convention remaps the exponent before dispatch") {
    RunConfig cfg = gf16_config(Command::hull);
    cfg.k = Range{2, 2};
    cfg.e = Range{0, 3};
    cfg.convention = DualConvention::first_slot;
    cfg.format = OutputFormat::csv;
    std::ostringstream csv;
    CHECK(run_command(cfg, csv) == 0);
    std::istringstream back(csv.str());
    std::vector<HullReport> rows = read_hull_csv(back);
    REQUIRE(rows.size() == 4);
    std::vector<unsigned> es, dims;
    for (const auto& r : rows) {
        es.push_back(r.e);
        dims.push_back(r.dim_oracle);
    }
    CHECK(es == std::vector<unsigned>{0, 3, 2, 1});   // (m - e_in) mod m
    CHECK(dims == std::vector<unsigned>{0, 1, 2, 1});  // symmetric here

    RunConfig note = cfg;
    note.format = OutputFormat::text;
    std::ostringstream text;
    CHECK(run_command(note, text) == 0);
    CHECK(text.str().find("first-slot pairing convention") != std::string::npos);
}

TEST_CASE("classify names the worked-example codes and validates input") {
    RunConfig cfg = gf16_config(Command::classify);
    cfg.k = Range{2, 2};
    cfg.e = Range{2, 2};
    cfg.with_basis = true;
    std::ostringstream out;
    CHECK(run_command(cfg, out) == 0);
    CHECK(out.str().rfind("self-dual\n", 0) == 0);
    CHECK(out.str().find("hull basis rows:") != std::string::npos);

    RunConfig missing = gf16_config(Command::classify);
    missing.e = Range{0, 0};
    std::ostringstream err;
    CHECK(run_command(missing, err) == 2);  // no --k
    RunConfig ranged = gf16_config(Command::classify);
    ranged.k = Range{1, 2};
    ranged.e = Range{0, 0};
    std::ostringstream err2;
    CHECK(run_command(ranged, err2) == 2);  // range where a single value is needed

    // a genuinely non-self-dual basis downgrades the closed form to advisory
    RunConfig power = gf16_config(Command::classify);
    power.basis = "1;w;w^2;w^3";
    power.k = Range{2, 2};
    power.e = Range{0, 0};
    std::ostringstream adv;
    CHECK(run_command(power, adv) == 0);
    CHECK(adv.str().find("closed form not guaranteed") != std::string::npos);
}

TEST_CASE("dual-gen emits the closed-form rows and their verification") {
    RunConfig cfg = gf16_config(Command::dual_gen);
    cfg.k = Range{2, 2};
    cfg.e = Range{1, 1};
    cfg.format = OutputFormat::json;
    std::ostringstream js;
    CHECK(run_command(cfg, js) == 0);
    json j = json::parse(js.str());
    CHECK(j["annihilates_code"] == true);
    CHECK(j["matches_kernel_oracle"] == true);

    // for a self-dual basis the dual rows are alpha twisted by q^{k-e+i}
    auto f = field_make(2, 4, Poly{1, 1, 0, 0, 1});
    Basis alpha = self_dual_basis(*f);
    json expect = json::array();
    for (unsigned r = 0; r < 2; ++r) {
        json row = json::array();
        for (unsigned c = 0; c < 4; ++c) row.push_back(alpha[c].frob(1 + r).coeffs());
        expect.push_back(std::move(row));
    }
    CHECK(j["dual_generator"] == expect);

    std::ostringstream text;
    cfg.format = OutputFormat::text;
    CHECK(run_command(cfg, text) == 0);
    CHECK(text.str().find("G * (D^[e])^T = 0: yes") != std::string::npos);
    CHECK(text.str().find("matches the kernel-built dual: yes") != std::string::npos);
}

TEST_CASE("eaqecc-table reproduces the showcase rows and single instances") {
    RunConfig cfg;
    cfg.command = Command::eaqecc_table;
    cfg.p = 2;
    cfg.m = 100;
    cfg.e = Range{2, 2};
    cfg.k = Range{50, 50};
    cfg.format = OutputFormat::json;
    std::ostringstream js;
    CHECK(run_command(cfg, js) == 0);
    json j = json::parse(js.str());
    REQUIRE(j.size() == 1);
    CHECK(j[0]["n"] == 100);
    CHECK(j[0]["k_q"] == 48);
    CHECK(j[0]["d"] == 51);
    CHECK(j[0]["c"] == 48);
    CHECK(j[0]["exceeds_grs_threshold"] == true);
    cfg.format = OutputFormat::text;
    std::ostringstream text100;
    CHECK(run_command(cfg, text100) == 0);
    CHECK(text100.str().find("[[100, 48, 51; 48]]") != std::string::npos);
    CHECK(text100.str().find("grs-threshold=20 exceeds=yes") != std::string::npos);

    RunConfig preset;
    preset.command = Command::eaqecc_table;
    preset.paper_table1 = true;
    preset.format = OutputFormat::csv;
    std::ostringstream csv;
    CHECK(run_command(preset, csv) == 0);
    std::istringstream back(csv.str());
    std::vector<EaqeccParams> rows = read_eaqecc_csv(back);
    CHECK(rows.size() == 119);
    // includes rows outside the validated regime without failing
    size_t outside = 0;
    for (const auto& r : rows)
        if (!r.regime_validated) ++outside;
    CHECK(outside > 0);

    RunConfig tiny;
    tiny.command = Command::eaqecc_table;
    tiny.p = 2;
    tiny.m = 4;
    tiny.e = Range{2, 2};
    tiny.k = Range{2, 2};
    std::ostringstream text;
    CHECK(run_command(tiny, text) == 0);
    CHECK(text.str().find("[[4, 0, 3; 0]]") != std::string::npos);
}

TEST_CASE("verify-sweep summarizes, emits parseable CSV, and exits clean") {
    RunConfig cfg;
    cfg.command = Command::verify_sweep;
    cfg.max_qm = 512;
    cfg.threads = 1;

    std::ostringstream text;
    CHECK(run_command(cfg, text) == 0);
    CHECK(text.str().find("verdict: all checks passed") != std::string::npos);
    CHECK(text.str().find("formula/oracle disagreements: 0") != std::string::npos);
    // the text artifact carries the CSV block after the summary
    size_t header = text.str().find(hull_csv_header);
    REQUIRE(header != std::string::npos);
    std::istringstream back(text.str().substr(header));
    std::vector<HullReport> rows = read_hull_csv(back);
    CHECK_FALSE(rows.empty());

    cfg.format = OutputFormat::json;
    std::ostringstream js;
    CHECK(run_command(cfg, js) == 0);
    json j = json::parse(js.str());
    CHECK(j["clean"] == true);
    CHECK(j["disagreements"] == 0);
    CHECK(j["reports"].size() == rows.size());
    CHECK(j["instances"] == rows.size());

    cfg.format = OutputFormat::csv;
    std::ostringstream csv;
    CHECK(run_command(cfg, csv) == 0);
    std::istringstream back2(csv.str());
    CHECK(read_hull_csv(back2).size() == rows.size());
}

TEST_CASE("binary end-to-end: exit codes and artifact files") {
    CHECK(run_binary("selfdual-basis --p 2 --m 4 --modulus x^4+x+1") == 0);
    CHECK(run_binary("selfdual-basis --p 3 --m 2") == 2);
    CHECK(run_binary("hull --p 2 --m 4 --k 9") == 2);
    CHECK(run_binary("definitely-not-a-command") == 2);
    CHECK(run_binary("--help") == 0);
    CHECK(run_binary("eaqecc-table --paper-table1") == 0);

    std::string dir = "cli_artifacts";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directory(dir);
    std::string cmd = std::string("GABHULL_OUT_DIR=") + dir + " " + GABHULL_BIN +
                      " hull --p 2 --m 4 --modulus x^4+x+1 --k 2 --e 0..3 --format csv "
                      "--out dims.csv > /dev/null 2>&1";
    REQUIRE(std::system(cmd.c_str()) == 0);
    std::ifstream file(dir + "/dims.csv");
    REQUIRE(file.good());
    std::vector<HullReport> rows = read_hull_csv(file);
    CHECK(rows.size() == 4);
    CHECK(rows[2].classification == Classification::self_dual);

    // key=value config file mirrors the flags
    std::ofstream conf(dir + "/run.conf");
    conf << "p=2\nm=4\nmodulus=x^4+x+1\nk=2\ne=0..3\nformat=csv\n";
    conf.close();
    cmd = std::string(GABHULL_BIN) + " hull --config " + dir + "/run.conf > " + dir +
          "/conf.csv 2>/dev/null";
    REQUIRE(std::system(cmd.c_str()) == 0);
    std::ifstream conf_out(dir + "/conf.csv");
    CHECK(read_hull_csv(conf_out).size() == 4);
    std::filesystem::remove_all(dir);
}
