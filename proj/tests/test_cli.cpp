#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunResult run_cli(const std::string& args) {
    static int counter = 0;
    const std::string out_path = "cli_stdout_" + std::to_string(counter) + ".txt";
    const std::string err_path = "cli_stderr_" + std::to_string(counter) + ".txt";
    ++counter;
    const std::string cmd = std::string(LDPCW_CLI_PATH) + " " + args + " >" +
                            out_path + " 2>" + err_path;
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out_path);
    r.err = slurp(err_path);
    std::remove(out_path.c_str());
    std::remove(err_path.c_str());
    return r;
}

}  // namespace

TEST_CASE("gen is deterministic: identical alist bytes for the same seed") {
    const RunResult a =
        run_cli("gen --family gallager --j 3 --k 6 --n 48 --seed 7 --out gen_a.alist");
    const RunResult b =
        run_cli("gen --family gallager --j 3 --k 6 --n 48 --seed 7 --out gen_b.alist");
    REQUIRE(a.exit_code == 0);
    REQUIRE(b.exit_code == 0);
    CHECK(a.out.find("meta: family=gallager") == 0);
    CHECK(a.out.find("rng=xoshiro256**+splitmix64/v1") != std::string::npos);
    CHECK(slurp("gen_a.alist") == slurp("gen_b.alist"));
    CHECK(!slurp("gen_a.alist").empty());
    std::remove("gen_a.alist");
    std::remove("gen_b.alist");
}

TEST_CASE("analyze reports the fixture's distance data") {
    const RunResult r =
        run_cli(std::string("analyze --in ") + LDPCW_DATA_DIR + "/xqr48.alist");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("d_min=12\n") != std::string::npos);
    CHECK(r.out.find("A=17296\n") != std::string::npos);
    CHECK(r.out.find("d_dual=12\n") != std::string::npos);
}

TEST_CASE("analyze emits a csv row on request") {
    const RunResult r = run_cli(std::string("analyze --in ") + LDPCW_DATA_DIR +
                                "/qc48.alist --csv --name qc48");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("code,d_min,A_dmin,d_stop,d_dual,girth,J,K") == 0);
    CHECK(r.out.find("qc48,") != std::string::npos);
}

TEST_CASE("simulate with rpc 0 equals bp output") {
    const std::string common = std::string("simulate --in ") + LDPCW_DATA_DIR +
                               "/qc48.alist --channel bec --eps 0.35 "
                               "--max-frames 2000 --target-errors 2000 --seed 12";
    const RunResult bp = run_cli(common + " --decoder bp");
    const RunResult rpc = run_cli(common + " --decoder rpc --rpc-rows 0");
    REQUIRE(bp.exit_code == 0);
    REQUIRE(rpc.exit_code == 0);
    // identical frames and errors; only the decoder label differs
    const auto strip_label = [](std::string s) {
        const auto pos = s.find(",BP,");
        if (pos != std::string::npos) s.replace(pos, 4, ",*,");
        const auto pos2 = s.find(",RPC,");
        if (pos2 != std::string::npos) s.replace(pos2, 5, ",*,");
        return s;
    };
    CHECK(strip_label(bp.out) == strip_label(rpc.out));
}

TEST_CASE("spectrum and bound round trip through csv files") {
    const RunResult sp = run_cli(
        "spectrum --j 2 --k 2 --q 2 --n 4 --kind weight --out spectrum_tmp.csv");
    REQUIRE(sp.exit_code == 0);
    const std::string csv = slurp("spectrum_tmp.csv");
    CHECK(csv.find("w,S_w,exact") == 0);
    CHECK(csv.find("2,0.66666") != std::string::npos);

    const RunResult bd = run_cli(
        "bound --weight-csv spectrum_tmp.csv --eps 0.1,0.5,0.9 --out bound_tmp.csv");
    REQUIRE(bd.exit_code == 0);
    const std::string bound_csv = slurp("bound_tmp.csv");
    CHECK(bound_csv.find("eps,bound_ml,bound_bp") == 0);
    std::remove("spectrum_tmp.csv");
    std::remove("bound_tmp.csv");
}

TEST_CASE("extend appends rows and keeps the code") {
    const RunResult r = run_cli(std::string("extend --in ") + LDPCW_DATA_DIR +
                                "/qc48.alist --rows 8 --out extended_tmp.alist");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("meta: appended=8") == 0);
    const RunResult check = run_cli("analyze --in extended_tmp.alist");
    REQUIRE(check.exit_code == 0);
    CHECK(check.out.find("r=32\n") != std::string::npos);
    CHECK(check.out.find("rank=24\n") != std::string::npos);
    std::remove("extended_tmp.alist");
}

TEST_CASE("error classes map to prefixed diagnostics and exit codes") {
    // PARSE/: missing file
    const RunResult parse = run_cli("analyze --in does_not_exist.alist");
    CHECK(parse.exit_code == 1);
    CHECK(parse.err.find("PARSE/") == 0);

    // DOMAIN/: bad flag value
    const RunResult domain =
        run_cli("gen --family gallager --j 3 --k 5 --n 48 --seed 1 --out tmp.alist");
    CHECK(domain.exit_code == 2);
    CHECK(domain.err.find("DOMAIN/") == 0);

    // DOMAIN/: unknown family
    const RunResult family =
        run_cli("gen --family mystery --out tmp.alist");
    CHECK(family.exit_code == 2);
    CHECK(family.err.find("DOMAIN/") == 0);

    // BUDGET/: more redundant rows than dual codewords in budget
    const RunResult budget = run_cli(std::string("extend --in ") + LDPCW_DATA_DIR +
                                     "/qc48.alist --rows 40 --weight-budget 4 "
                                     "--out tmp.alist");
    CHECK(budget.exit_code == 3);
    CHECK(budget.err.find("BUDGET/") == 0);
    std::remove("tmp.alist");
}

TEST_CASE("qc expansion via the cli matches the exponent file") {
    const RunResult r = run_cli(std::string("gen --family qc --qc-in ") +
                                LDPCW_DATA_DIR +
                                "/qc48.qc --out qc_tmp.alist --seed 0");
    REQUIRE(r.exit_code == 0);
    CHECK(slurp("qc_tmp.alist") == slurp(std::string(LDPCW_DATA_DIR) + "/qc48.alist"));
    std::remove("qc_tmp.alist");
}

TEST_CASE("analyze computes the rho hierarchy on request") {
    const RunResult r = run_cli(std::string("analyze --in ") + LDPCW_DATA_DIR +
                                "/qc48.alist --rho 3,5 --rho-candidates 20000");
    REQUIRE(r.exit_code == 0);
    // d_stop of the fixture is 5: level 3 needs no rows beyond the 24
    CHECK(r.out.find("rho_3=24") != std::string::npos);
    CHECK(r.out.find("rho_5=") != std::string::npos);
    CHECK(r.out.find("(greedy upper bound)") != std::string::npos);
}

TEST_CASE("candidate search reports the winner and its distance") {
    const RunResult r = run_cli(
        "gen --family ru --j 3 --k 6 --n 24 --seed 11 --search 20 --out search_tmp.alist");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("candidates=20") != std::string::npos);
    CHECK(r.out.find("winner_seed=") != std::string::npos);
    CHECK(r.out.find("d_min=") != std::string::npos);
    std::remove("search_tmp.alist");
}

TEST_CASE("plot-data mode emits bare pairs") {
    const RunResult r = run_cli(std::string("simulate --in ") + LDPCW_DATA_DIR +
                                "/qc48.alist --channel bec --eps 0.2,0.4 "
                                "--max-frames 500 --target-errors 500 --seed 3 "
                                "--plot-data");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("channel") == std::string::npos);  // no CSV header
    CHECK(r.out.find("0.2 ") == 0);
    CHECK(r.out.find("\n0.4 ") != std::string::npos);
}

TEST_CASE("nonbinary generation writes both image and label files") {
    const RunResult r = run_cli(
        "gen --family nonbinary --j 3 --k 6 --n 12 --m 4 --seed 5 "
        "--out nb_tmp.alist --labels-out nb_tmp.labels");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("q=16") != std::string::npos);
    CHECK(!slurp("nb_tmp.alist").empty());
    const std::string labels = slurp("nb_tmp.labels");
    CHECK(labels.find("gf 4 13") != std::string::npos);  // x^4+x+1 = 0x13
    std::remove("nb_tmp.alist");
    std::remove("nb_tmp.labels");
}
