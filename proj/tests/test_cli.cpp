// Black-box tests driving the installed binary; the path arrives as argv[1].
#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace {

std::string g_bin;

struct RunResult {
    int code;
    std::string out;
};

RunResult run(const std::string& args, const std::string& env = "") {
    std::string cmd = env + " " + g_bin + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0)
        out.append(buf.data(), n);
    int status = pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string first_line(const std::string& s) {
    return s.substr(0, s.find('\n'));
}

size_t count_lines(const std::string& s, const std::string& needle) {
    size_t count = 0, pos = 0;
    while ((pos = s.find(needle, pos)) != std::string::npos) {
        ++count;
        pos += needle.size();
    }
    return count;
}

const char* kPortraitJson = R"({"points":["a","b","c","d"],
  "images":{"a":"b","b":"c","c":"b"},
  "essential":"d","singular":["a","d"],"transcendental":true})";

std::string write_portrait() {
    std::string path = "/tmp/pullback_cli_portrait.json";
    std::ofstream(path) << kPortraitJson;
    return path;
}

} // namespace

TEST_CASE("connecting map formulas") {
    CHECK(first_line(run("moebius mij --i 4 --j 3").out) == "1 - z");
    CHECK(first_line(run("moebius mij --i 4 --j 1").out) == "1/z");
    CHECK(first_line(run("moebius mij --i 4 --j 2").out) == "(z - 1)/z");
    CHECK(first_line(run("moebius mij --i 1 --j 2").out) == "z/(z - 1)");
    CHECK(first_line(run("moebius mij --i 3 --j 2").out) == "1/z");
    auto r = run("moebius mij --i 4 --j 4");
    CHECK(r.code == 0);
    CHECK(first_line(r.out) == "z");
}

TEST_CASE("portrait enumeration output") {
    auto r = run("portrait enumerate --family entire3");
    CHECK(r.code == 0);
    CHECK(count_lines(r.out, "[II]") == 3);
    CHECK(r.out.find("7 portraits, 3 satisfy condition (II)") !=
          std::string::npos);

    auto j = run("portrait enumerate --family exponential --format json");
    CHECK(j.out.find("\"count\":2") != std::string::npos);
    CHECK(j.out.find("\"condition_ii_count\":2") != std::string::npos);
}

TEST_CASE("portrait file commands") {
    std::string f = write_portrait();
    CHECK(first_line(run("portrait check " + f).out) == "valid");
    auto b = run("portrait bsets " + f);
    CHECK(b.out.find("B={a,b,d} C={a,c,d} i=3 j=2") != std::string::npos);
    auto u = run("portrait unobstructed " + f + " --format json");
    CHECK(u.out.find("\"totally_unobstructed\":false") != std::string::npos);
    CHECK(u.out.find("\"witness\":[\"b\",\"c\"]") != std::string::npos);
}

TEST_CASE("hyperbolic commands") {
    auto t = run("hyp threshold --d0 0 --format json");
    CHECK(t.out.find("8.911069890956846e+00") != std::string::npos);
    CHECK(first_line(run("hyp dist --model sigma 0.5,0.3 0.5,0.3").out) ==
          "0");
    CHECK(first_line(run("hyp lambda 0,1").out) == "0.5,0");
}

TEST_CASE("gmap commands") {
    CHECK(first_line(run("gmap eval --z inf").out) == "1");
    auto fp = run("gmap fixed-points --radius 5 --grid 40");
    CHECK(first_line(fp.out) == "re,im,mult_re,mult_im,abs_mult,class");
    CHECK(count_lines(fp.out, "repelling") >= 5);
}

TEST_CASE("orbit run verdicts") {
    auto o = run("orbit run --m 1 --json");
    CHECK(o.out.find("\"verdict\":\"obstructed\"") != std::string::npos);
    CHECK(o.out.find("\"cusp\":\"1\"") != std::string::npos);
    CHECK(o.out.find("\"levy_pairs\":[[\"a\",\"d\"],[\"b\",\"c\"]]") !=
          std::string::npos);
    auto r = run("orbit run --m 3 --json");
    CHECK(r.out.find("\"verdict\":\"realized\"") != std::string::npos);
    auto c = run("orbit run --m 1 --format csv");
    CHECK(first_line(c.out) == "n,re,im,branch,step_hyp,chordal_dist_to_0,"
                               "chordal_dist_to_1,chordal_dist_to_inf");
}

TEST_CASE("campaign determinism") {
    std::string cmd =
        "orbit campaign --starts 5 --m-range -2..2 --seed 11 --format json";
    auto a = run(cmd);
    auto b = run(cmd);
    CHECK(a.code == 0);
    CHECK(!a.out.empty());
    CHECK(a.out == b.out);
    auto c = run("orbit campaign --starts 5 --m-range -2..2 --seed 12 "
                 "--format json");
    CHECK(a.out != c.out);
}

TEST_CASE("environment and config overrides") {
    auto e = run("hyp bound --s 1", "PULLBACK_FORMAT=json");
    CHECK(e.out.find("\"bound\":") != std::string::npos);
    std::string cfg = "/tmp/pullback_cli_cfg.toml";
    std::ofstream(cfg) << "format=json\n";
    auto c = run("--config " + cfg + " hyp bound --s 1");
    CHECK(c.out.find("\"bound\":") != std::string::npos);
}

TEST_CASE("exit codes") {
    CHECK(run("").code == 2);
    CHECK(run("moebius mij --i 9 --j 1").code == 2);
    CHECK(run("nonsense").code == 2);
    CHECK(run("hyp bound --s 0").code == 1);     // domain error
    CHECK(run("hyp bound --s 1").code == 0);
}

int main(int argc, char** argv) {
    if (argc > 1) g_bin = argv[1];
    doctest::Context ctx;
    ctx.applyCommandLine(1, argv);
    return ctx.run();
}
