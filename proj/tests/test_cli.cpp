#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "gestrec/raster.hpp"

namespace fs = std::filesystem;

namespace {

const std::string kBin = GESTREC_CLI_PATH;

int run(const std::string& args) {
    const std::string cmd = kBin + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    REQUIRE(WIFEXITED(status));
    return WEXITSTATUS(status);
}

int run_capture(const std::string& args, const fs::path& out, std::string& stdout_text) {
    const std::string cmd = kBin + " " + args + " >" + out.string() + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    REQUIRE(WIFEXITED(status));
    std::ifstream in(out);
    stdout_text.assign((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return WEXITSTATUS(status);
}

// One shared scratch layout: tiny dataset, registry, and a flat query image.
struct CliFixture {
    fs::path root = fs::temp_directory_path() / "gestrec_cli_test";
    fs::path dataset = root / "dataset";
    fs::path registry = root / "registry";
    fs::path flat = root / "flat.pgm";
    fs::path capture = root / "out.txt";

    CliFixture() {
        fs::remove_all(root);
        fs::create_directories(root);
        gestrec::write_pgm(flat, gestrec::GrayImage(64, 64, 90));
    }
    ~CliFixture() { fs::remove_all(root); }
};

}  // namespace

TEST_CASE("usage errors exit with 2, help with 0") {
    CHECK(run("") == 2);
    CHECK(run("--help") == 0);
    CHECK(run("synth --help") == 0);
    CHECK(run("frobnicate") == 2);
    CHECK(run("synth --no-such-flag") == 2);
    CHECK(run("synth") == 2);  // missing --out
}

TEST_CASE("synth, enroll, recognize, eval, and bench cooperate end to end") {
    CliFixture fx;

    REQUIRE(run("synth --classes 2 --per-class 2 --seed 5 --out " + fx.dataset.string()) == 0);
    CHECK(fs::exists(fx.dataset / "manifest.json"));
    CHECK(fs::exists(fx.dataset / "B" / "01.pgm"));

    REQUIRE(run("enroll --dataset " + fx.dataset.string() + " --registry " + fx.registry.string() +
                " --canonical-size 64") == 0);
    CHECK(fs::exists(fx.registry / "registry.json"));
    CHECK(fs::exists(fx.registry / "A.pgm"));

    SUBCASE("re-enrolling into the same registry is refused") {
        CHECK(run("enroll --dataset " + fx.dataset.string() + " --registry " +
                  fx.registry.string()) == 2);
    }

    SUBCASE("recognize prints the label and nine-decimal mse") {
        std::string out;
        const int code = run_capture("recognize --image " + (fx.dataset / "A" / "00.pgm").string() +
                                         " --registry " + fx.registry.string(),
                                     fx.capture, out);
        CHECK(code == 0);
        CHECK(out == "A\t0.000000000\n");
    }

    SUBCASE("recognize --scores appends the per-class table") {
        std::string out;
        const int code = run_capture("recognize --image " + (fx.dataset / "B" / "00.pgm").string() +
                                         " --registry " + fx.registry.string() + " --scores",
                                     fx.capture, out);
        CHECK(code == 0);
        CHECK(out.substr(0, 2) == "B\t");
        CHECK(out.find("A\t") != std::string::npos);
    }

    SUBCASE("a query with no foreground exits with 3") {
        CHECK(run("recognize --image " + fx.flat.string() + " --registry " +
                  fx.registry.string()) == 3);
    }

    SUBCASE("eval prints the accuracy table and writes csv on request") {
        std::string out;
        const fs::path csv = fx.root / "report.csv";
        const int code = run_capture("eval --dataset " + fx.dataset.string() + " --registry " +
                                         fx.registry.string() + " --csv " + csv.string(),
                                     fx.capture, out);
        CHECK(code == 0);
        CHECK(out.find("Hand Gesture") != std::string::npos);
        CHECK(out.find("Total") != std::string::npos);

        std::ifstream in(csv);
        std::string line;
        REQUIRE(std::getline(in, line));
        CHECK(line == "class,input,recognized,accuracy_pct");
    }
}

TEST_CASE("missing inputs are configuration errors") {
    CliFixture fx;
    CHECK(run("enroll --dataset " + (fx.root / "nope").string() + " --registry " +
              fx.registry.string()) == 2);
    CHECK(run("recognize --image " + fx.flat.string() + " --registry " +
              (fx.root / "nope").string()) == 2);
    CHECK(run("eval --dataset " + (fx.root / "nope").string() + " --registry " +
              (fx.root / "nope2").string()) == 2);
}

TEST_CASE("bench validates its sizes and reports a speedup") {
    CliFixture fx;
    CHECK(run("bench --size 32 --kernel 64 --iters 1") == 2);
    CHECK(run("bench --size 32 --kernel 16 --iters 0") == 2);

    std::string out;
    const int code = run_capture("bench --size 48 --kernel 24 --iters 1", fx.capture, out);
    CHECK(code == 0);
    CHECK(out.find("speedup") != std::string::npos);
    CHECK(out.find("reference") != std::string::npos);
}
