#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CmdResult {
    int exit_code;
    std::string output;
};

CmdResult run_cmd(const std::string& args) {
    const std::string cmd = std::string("\"") + THICKNESS_LAB_BIN + "\" " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

fs::path work_dir() {
    static const fs::path dir = [] {
        const fs::path d =
            fs::temp_directory_path() / ("thickness_cli_" + std::to_string(getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

fs::path write_config(const std::string& name, const json& j) {
    const fs::path p = work_dir() / name;
    std::ofstream(p) << j.dump(2) << "\n";
    return p;
}

fs::path write_text(const std::string& name, const std::string& text) {
    const fs::path p = work_dir() / name;
    std::ofstream(p) << text;
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("identical configs give byte-identical reports modulo wall_time") {
    const fs::path cfg = write_config("det.json", {{"scenario", "lp-thickness"},
                                                   {"p", 2.0},
                                                   {"dim", 4},
                                                   {"seed", 7},
                                                   {"budget", 4000},
                                                   {"restarts", 8}});
    const std::string out_a = (work_dir() / "det_a").string();
    const std::string out_b = (work_dir() / "det_b").string();
    const CmdResult a = run_cmd("run " + cfg.string() + " --out " + out_a);
    const CmdResult b = run_cmd("run " + cfg.string() + " --out " + out_b);
    CHECK(a.exit_code == 0);
    CHECK(b.exit_code == 0);

    json ja = json::parse(slurp(out_a + ".json"));
    json jb = json::parse(slurp(out_b + ".json"));
    CHECK(ja.at("wall_time").is_number());
    ja.erase("wall_time");
    jb.erase("wall_time");
    // the out stem is echoed in the config and differs by design
    ja.at("config").erase("out");
    jb.at("config").erase("out");
    CHECK(ja.dump() == jb.dump());

    CHECK(slurp(out_a + ".csv") == slurp(out_b + ".csv"));
}

TEST_CASE("CSV summary shape") {
    const fs::path cfg = write_config("csv.json", {{"scenario", "lp-thickness"},
                                                   {"p", 2.0},
                                                   {"dim", 4},
                                                   {"seed", 7},
                                                   {"budget", 4000}});
    const std::string stem = (work_dir() / "csv_out").string();
    const CmdResult r = run_cmd("run " + cfg.string() + " --out " + stem);
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("scenario,p,dim,m,lower,estimate,upper,pass,seed") != std::string::npos);

    const std::string csv = slurp(stem + ".csv");
    CHECK(csv.rfind("scenario,p,dim,m,lower,estimate,upper,pass,seed\n", 0) == 0);
    const std::string row = csv.substr(csv.find('\n') + 1);
    CHECK(row.rfind("lp-thickness,2,4,2,", 0) == 0);  // dim echoes the space actually used
    CHECK(std::count(row.begin(), row.end(), ',') == 8);
    CHECK(row.find("true") != std::string::npos);
}

TEST_CASE("check mode exit codes") {
    const fs::path good = write_config("good.json", {{"scenario", "lp-thickness"},
                                                     {"p", 2.0},
                                                     {"dim", 4},
                                                     {"seed", 7},
                                                     {"budget", 4000}});
    const CmdResult pass = run_cmd("check " + good.string() + " --out " +
                                   (work_dir() / "chk_pass").string());
    CHECK(pass.exit_code == 0);
    CHECK(pass.output.find("CHECK PASS") != std::string::npos);

    const fs::path forced = write_config("forced.json", {{"scenario", "lp-thickness"},
                                                         {"p", 2.0},
                                                         {"dim", 4},
                                                         {"seed", 7},
                                                         {"budget", 4000},
                                                         {"tolerance_scale", 0.0}});
    const CmdResult fail = run_cmd("check " + forced.string() + " --out " +
                                   (work_dir() / "chk_fail").string());
    CHECK(fail.exit_code == 3);
    CHECK(fail.output.find("CHECK FAIL") != std::string::npos);

    // run mode still exits 0 on a failing assertion; the report records it
    const std::string stem = (work_dir() / "run_fail").string();
    const CmdResult run_fail = run_cmd("run " + forced.string() + " --out " + stem);
    CHECK(run_fail.exit_code == 0);
    CHECK(json::parse(slurp(stem + ".json")).at("pass") == false);
}

TEST_CASE("config errors exit 2") {
    const fs::path garbled = write_text("garbled.json", "this is not json\n");
    CHECK(run_cmd("run " + garbled.string()).exit_code == 2);

    const fs::path unknown_key = write_config(
        "unknown_key.json", {{"scenario", "lp-thickness"}, {"seed", 1}, {"bogus", 3}});
    CHECK(run_cmd("run " + unknown_key.string()).exit_code == 2);

    const fs::path no_seed = write_config("no_seed.json", {{"scenario", "lp-thickness"}});
    CHECK(run_cmd("run " + no_seed.string()).exit_code == 2);

    const fs::path bad_scenario =
        write_config("bad_scenario.json", {{"scenario", "frobnicate"}, {"seed", 1}});
    CHECK(run_cmd("run " + bad_scenario.string()).exit_code == 2);

    CHECK(run_cmd("run " + (work_dir() / "missing.json").string()).exit_code == 2);

    // usage errors from the argument parser
    CHECK(run_cmd("").exit_code != 0);
    CHECK(run_cmd("--help").exit_code == 0);
}

TEST_CASE("flags override the config file") {
    const fs::path cfg = write_config("override.json", {{"scenario", "lp-thickness"},
                                                        {"p", 2.0},
                                                        {"dim", 4},
                                                        {"seed", 7},
                                                        {"budget", 4000}});
    const std::string stem = (work_dir() / "override_out").string();
    const CmdResult r =
        run_cmd("run " + cfg.string() + " --seed 99 --budget 1234 --out " + stem);
    CHECK(r.exit_code == 0);
    const json rep = json::parse(slurp(stem + ".json"));
    CHECK(rep.at("config").at("seed") == 99);
    CHECK(rep.at("config").at("budget") == 1234);
    CHECK(rep.at("results").at("report").at("seed") == 99);
}

TEST_CASE("other scenarios run end to end through the CLI") {
    const fs::path hyper = write_config(
        "hyper.json", {{"scenario", "hyperplane"}, {"seed", 7}, {"budget", 3000}});
    const CmdResult h =
        run_cmd("check " + hyper.string() + " --out " + (work_dir() / "hyper_out").string());
    CHECK(h.exit_code == 0);
    CHECK(h.output.find("CHECK PASS") != std::string::npos);
    // p prints as inf in the summary row for sup-norm hosts
    CHECK(h.output.find("hyperplane,inf,") != std::string::npos);

    const fs::path ineq = write_config("ineq.json", {{"scenario", "verify-inequalities"},
                                                     {"p", 1.5},
                                                     {"trials", 50},
                                                     {"seed", 7}});
    const CmdResult i =
        run_cmd("check " + ineq.string() + " --out " + (work_dir() / "ineq_out").string());
    CHECK(i.exit_code == 0);
    CHECK(i.output.find("CHECK PASS") != std::string::npos);
}
