#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include "snsim/util.hpp"

namespace fs = std::filesystem;

namespace {

struct CmdResult {
    int exit_code = -1;
    std::string stdout_text;
};

CmdResult run_tool(const std::string& args) {
    std::string cmd = std::string(SNSIM_BIN_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CmdResult result;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0)
        result.stdout_text.append(buf, got);
    int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

fs::path workdir() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() /
                     ("snsim_cli_test_" + std::to_string(getpid()));
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string make_triangle_file() {
    fs::path p = workdir() / "k3.txt";
    snsim::write_text_file(p.string(), "0 1\n0 2\n1 2\n");
    return p.string();
}

} // namespace

TEST_CASE("simulate reproduces the one-seed triangle closure") {
    std::string graph = make_triangle_file();
    fs::path out = workdir() / "t.csv";
    CmdResult r = run_tool("simulate --graph " + graph +
                           " --epsilon 0.1 --x2 0.5 --p 0 --seed-nodes 0"
                           " --rng-seed 7 --out " + out.string());
    CHECK(r.exit_code == 0);
    CHECK(snsim::read_text_file(out.string()) ==
          "step,adopters_total,adopters_frac,new_diffusive,new_nondiffusive\n"
          "0,1,0.3333333333333333,0,0\n"
          "1,3,1,2,0\n");
    CHECK(fs::exists(out.string() + ".manifest"));
}

TEST_CASE("simulate without seeds or ignition writes a zero trace") {
    std::string graph = make_triangle_file();
    fs::path out = workdir() / "zeros.csv";
    CmdResult r = run_tool("simulate --graph " + graph +
                           " --epsilon 0.1 --x2 0.5 --p 0 --rng-seed 7 --out " +
                           out.string());
    CHECK(r.exit_code == 0);
    CHECK(snsim::read_text_file(out.string()) ==
          "step,adopters_total,adopters_frac,new_diffusive,new_nondiffusive\n"
          "0,0,0,0,0\n");
}

TEST_CASE("simulate rejects out-of-range parameters with a usage error") {
    std::string graph = make_triangle_file();
    fs::path out = workdir() / "bad.csv";
    CmdResult r = run_tool("simulate --graph " + graph +
                           " --epsilon 1.5 --x2 0.5 --rng-seed 7 --out " +
                           out.string());
    CHECK(r.exit_code == 2);
    CHECK_FALSE(fs::exists(out));
}

TEST_CASE("simulate rejects missing required flags and missing files") {
    std::string graph = make_triangle_file();
    CmdResult no_eps = run_tool("simulate --graph " + graph +
                                " --x2 0.5 --rng-seed 7 --out " +
                                (workdir() / "x.csv").string());
    CHECK(no_eps.exit_code == 2);

    CmdResult no_file = run_tool("simulate --graph " +
                                 (workdir() / "ghost.txt").string() +
                                 " --epsilon 0.1 --x2 0.5 --rng-seed 7 --out " +
                                 (workdir() / "x.csv").string());
    CHECK(no_file.exit_code == 2);

    CmdResult bad_seed = run_tool("simulate --graph " + graph +
                                  " --epsilon 0.1 --x2 0.5 --seed-nodes 99"
                                  " --rng-seed 7 --out " +
                                  (workdir() / "x.csv").string());
    CHECK(bad_seed.exit_code == 2);
}

TEST_CASE("simulate writes an SVG chart when asked") {
    std::string graph = make_triangle_file();
    fs::path out = workdir() / "chart.csv";
    fs::path svg = workdir() / "chart.svg";
    CmdResult r = run_tool("simulate --graph " + graph +
                           " --epsilon 0.1 --x2 0.5 --p 0 --seed-nodes 0"
                           " --rng-seed 7 --out " + out.string() + " --svg " +
                           svg.string());
    CHECK(r.exit_code == 0);
    std::string content = snsim::read_text_file(svg.string());
    CHECK(content.rfind("<svg", 0) == 0);
    CHECK(content.find("<polyline") != std::string::npos);
}

TEST_CASE("simulate re-run from its manifest is byte-identical") {
    std::string graph = make_triangle_file();
    fs::path first = workdir() / "first.csv";
    CmdResult a = run_tool("simulate --graph " + graph +
                           " --epsilon 0.2 --x2 0.9 --p 0.3 --horizon 50"
                           " --rng-seed 99 --out " + first.string());
    REQUIRE(a.exit_code == 0);

    fs::path second = workdir() / "second.csv";
    CmdResult b = run_tool("simulate --from-manifest " + first.string() +
                           ".manifest --out " + second.string());
    REQUIRE(b.exit_code == 0);
    CHECK(snsim::read_text_file(first.string()) ==
          snsim::read_text_file(second.string()));
}

TEST_CASE("a manifest replay detects a modified graph file") {
    fs::path graph = workdir() / "mutable.txt";
    snsim::write_text_file(graph.string(), "0 1\n1 2\n");
    fs::path out = workdir() / "m.csv";
    CmdResult a = run_tool("simulate --graph " + graph.string() +
                           " --epsilon 0.2 --x2 0.9 --p 0.5 --horizon 10"
                           " --rng-seed 1 --out " + out.string());
    REQUIRE(a.exit_code == 0);

    snsim::write_text_file(graph.string(), "0 1\n1 2\n2 3\n");
    CmdResult b = run_tool("simulate --from-manifest " + out.string() +
                           ".manifest --out " + (workdir() / "m2.csv").string());
    CHECK(b.exit_code == 1);
}

TEST_CASE("sweep writes one row per cell with paired seeds") {
    std::string graph = make_triangle_file();
    fs::path out = workdir() / "sweep.csv";
    CmdResult r = run_tool("sweep --graph " + graph +
                           " --x2 0.9 --p 0.5 --horizon 50 --rng-seed 5"
                           " --epsilons 0.1,0.3,0.5 --replicates 2"
                           " --out " + out.string());
    CHECK(r.exit_code == 0);
    std::string text = snsim::read_text_file(out.string());
    auto lines = snsim::split(text, '\n');
    REQUIRE(lines.size() == 8); // header + 6 rows + trailing empty
    CHECK(lines[0] ==
          "epsilon,replicate,seed,steps_to_50,steps_to_90,steps_to_full,"
          "terminal_fraction");
    // replicate 0 rows share the seed column across epsilon values
    auto seed_of = [&](std::size_t line) { return snsim::split(lines[line], ',')[2]; };
    CHECK(seed_of(1) == seed_of(3));
    CHECK(seed_of(3) == seed_of(5));
    CHECK(seed_of(2) == seed_of(4));
}

TEST_CASE("sweep validates the replicate count") {
    std::string graph = make_triangle_file();
    CmdResult r = run_tool("sweep --graph " + graph +
                           " --x2 0.9 --rng-seed 5 --epsilons 0.1"
                           " --replicates 0 --out " + (workdir() / "s.csv").string());
    CHECK(r.exit_code == 2);
}

TEST_CASE("sweep re-run from its manifest is byte-identical") {
    std::string graph = make_triangle_file();
    fs::path first = workdir() / "sweep_a.csv";
    CmdResult a = run_tool("sweep --graph " + graph +
                           " --x2 0.8 --p 0.4 --horizon 40"
                           " --rng-seed 31 --epsilons 0.2,0.6 --replicates 3"
                           " --out " + first.string());
    REQUIRE(a.exit_code == 0);
    fs::path second = workdir() / "sweep_b.csv";
    CmdResult b = run_tool("sweep --from-manifest " + first.string() +
                           ".manifest --out " + second.string());
    REQUIRE(b.exit_code == 0);
    CHECK(snsim::read_text_file(first.string()) ==
          snsim::read_text_file(second.string()));
}

TEST_CASE("survey-import derives x2 and writes the feature space") {
    fs::path ratings = workdir() / "ratings.csv";
    fs::path avail = workdir() / "availability.csv";
    snsim::write_text_file(ratings.string(),
                           "respondent,feature,rating\n"
                           "r1,A,4\nr2,A,4\nr1,B,2\nr2,B,2\nr1,C,3\nr2,C,3\n");
    snsim::write_text_file(avail.string(),
                           "feature,sns_list\nA,S1\nB,S1;S2\nC,S2\n");
    fs::path out = workdir() / "fs.csv";
    CmdResult r = run_tool("survey-import --ratings " + ratings.string() +
                           " --availability " + avail.string() +
                           " --new-sns S2 --old-sns S1 --out " + out.string());
    CHECK(r.exit_code == 0);
    // mean ratings 4,2,3 normalize to 4/9, 2/9, 3/9; only C is exclusive to S2
    CHECK(r.stdout_text == "x2=0.3333333333333333\n");
    std::string text = snsim::read_text_file(out.string());
    CHECK(text.find("feature,sns_list,share") == 0);
    CHECK(text.find("C,S2,0.3333333333333333") != std::string::npos);
}

TEST_CASE("survey-import prints x2=0 when the new site offers nothing new") {
    fs::path ratings = workdir() / "r0.csv";
    fs::path avail = workdir() / "a0.csv";
    snsim::write_text_file(ratings.string(),
                           "respondent,feature,rating\nr1,A,4\nr1,B,2\n");
    snsim::write_text_file(avail.string(), "feature,sns_list\nA,S1\nB,S1;S2\n");
    CmdResult r = run_tool("survey-import --ratings " + ratings.string() +
                           " --availability " + avail.string() +
                           " --new-sns S2 --old-sns S1 --out " +
                           (workdir() / "fs0.csv").string());
    CHECK(r.exit_code == 0);
    CHECK(r.stdout_text == "x2=0\n");
}

TEST_CASE("survey-import without the availability file is a usage error") {
    fs::path ratings = workdir() / "r1.csv";
    snsim::write_text_file(ratings.string(), "respondent,feature,rating\nr1,A,4\n");
    CmdResult r = run_tool("survey-import --ratings " + ratings.string() +
                           " --availability " + (workdir() / "none.csv").string() +
                           " --new-sns S2 --old-sns S1 --out " +
                           (workdir() / "fs1.csv").string());
    CHECK(r.exit_code == 2);
}

TEST_CASE("survey-import surfaces data errors with a nonzero status") {
    fs::path ratings = workdir() / "r2.csv";
    fs::path avail = workdir() / "a2.csv";
    snsim::write_text_file(ratings.string(), "respondent,feature,rating\nr1,A,9\n");
    snsim::write_text_file(avail.string(), "feature,sns_list\nA,S1;S2\n");
    CmdResult r = run_tool("survey-import --ratings " + ratings.string() +
                           " --availability " + avail.string() +
                           " --new-sns S2 --old-sns S1 --out " +
                           (workdir() / "fs2.csv").string());
    CHECK(r.exit_code == 1);
}

TEST_CASE("check-theorem prints the verdict for the parameter pair") {
    CmdResult impossible = run_tool("check-theorem --epsilon 0.3 --x2 0.25"
                                    " --trials 5 --n 40 --edge-prob 0.1");
    CHECK(impossible.exit_code == 0);
    CHECK(impossible.stdout_text.rfind("IMPOSSIBLE\n", 0) == 0);
    CHECK(impossible.stdout_text.find("5/5 trials passed") != std::string::npos);

    CmdResult boundary = run_tool("check-theorem --epsilon 0.25 --x2 0.25"
                                  " --trials 3 --n 30");
    CHECK(boundary.exit_code == 0);
    CHECK(boundary.stdout_text.rfind("IMPOSSIBLE\n", 0) == 0);

    CmdResult possible = run_tool("check-theorem --epsilon 0.1 --x2 0.25");
    CHECK(possible.exit_code == 0);
    CHECK(possible.stdout_text == "POSSIBLE\n");
}
