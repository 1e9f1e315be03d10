#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string binary_path() {
    const char* env = std::getenv("TRIGOKIT_BIN");
    REQUIRE(env != nullptr);
    return env;
}

struct RunResult {
    int exit_code = -1;
    std::string output; // stdout + stderr
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = binary_path() + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    while (std::size_t n = fread(buf, 1, sizeof(buf), pipe)) r.output.append(buf, n);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("trigokit_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

} // namespace

TEST_CASE("wells subcommand") {
    const RunResult r = run_cli("wells --d 1,2,3");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("pair (1,2)") != std::string::npos);
    CHECK(r.output.find("n = (1, 0, 0)") != std::string::npos);

    const RunResult j = run_cli("wells --d 0,0,0 --format json");
    CHECK(j.exit_code == 0);
    const json parsed = json::parse(j.output);
    CHECK(parsed["wells"]["wells"].size() == 4);
    CHECK(parsed["twin_table"].size() == 6);

    CHECK(run_cli("wells --d 1,2").exit_code == 2);
    CHECK(run_cli("wells --bogus").exit_code == 2);
}

TEST_CASE("map-ortho subcommand") {
    const RunResult r = run_cli("map-ortho --delta 1 --format json");
    CHECK(r.exit_code == 0);
    const json parsed = json::parse(r.output);
    CHECK(parsed["trigonal_params"]["d1"].get<double>() == doctest::Approx(-1.0 / 3.0));
    CHECK(parsed["trigonal_params"]["d2"].get<double>() == doctest::Approx(3.0));

    const json half = json::parse(run_cli("map-ortho --delta 2 --format json").output);
    CHECK(half["trigonal_params"]["d2"].get<double>() == doctest::Approx(0.75));

    CHECK(run_cli("map-ortho --delta 0").exit_code == 2);
    CHECK(run_cli("map-ortho --delta -1").exit_code == 2);
}

TEST_CASE("gen, verify, classify and reconstruct chain") {
    TempDir dir;
    const std::string field = dir.file("lam.sfield");
    const std::string disp = dir.file("lam.dfield");

    const RunResult gen = run_cli(
        "gen laminate --dims 8,8,8 --d 1,2,3 --pair 1,3 --normal axis --profile ++--++-- --out " +
        field);
    CHECK(gen.exit_code == 0);
    CHECK(gen.output.find("defect fraction 0") != std::string::npos);

    const RunResult verify = run_cli("verify " + field);
    CHECK(verify.exit_code == 0);
    const json vjson = json::parse(verify.output);
    CHECK(vjson["pass"].get<bool>());
    CHECK(vjson["residuals"]["wave_e12"]["relative"].get<double>() <= 1e-12);

    const RunResult classify = run_cli("classify " + field);
    CHECK(classify.exit_code == 0);
    const json cjson = json::parse(classify.output);
    CHECK(cjson["kind"] == "SimpleLaminate");
    CHECK(cjson["well_pair"][0] == 1);
    CHECK(cjson["well_pair"][1] == 3);
    CHECK(cjson["profile"] == "++--++--");

    const RunResult rec = run_cli("reconstruct " + field + " --out " + disp);
    CHECK(rec.exit_code == 0);
    CHECK(fs::exists(disp));

    // Canonical JSON: parse and re-serialize leaves the report unchanged.
    CHECK(json::parse(cjson.dump(2)).dump(2) == cjson.dump(2));
}

TEST_CASE("gen crossing end to end") {
    TempDir dir;
    const std::string field = dir.file("cross.sfield");
    const RunResult gen = run_cli(
        "gen crossing --dims 16,4,16 --d 1,2,3 --axis 2 --f ++++++++-------- --g +-+-+-+-+-+-+-+- "
        "--out " +
        field);
    CHECK(gen.exit_code == 0);

    const RunResult verify = run_cli("verify " + field);
    CHECK(verify.exit_code == 0);

    const json cjson = json::parse(run_cli("classify " + field).output);
    CHECK(cjson["kind"] == "CrossingTwin");
    CHECK(cjson["invariant_axis"] == 2);
    CHECK(cjson["f"] == "++++++++--------");
    CHECK(cjson["g"] == "+-+-+-+-+-+-+-+-");

    // Unequal active spacings are a generator precondition failure.
    const RunResult bad = run_cli(
        "gen crossing --dims 16,4,8 --d 1,2,3 --axis 2 --f ++++++++ --g +-+-+-+-+-+-+-+- --out " +
        dir.file("bad.sfield"));
    CHECK(bad.exit_code == 3);
}

TEST_CASE("verify failures") {
    TempDir dir;
    const std::string field = dir.file("const.sfield");
    CHECK(run_cli("gen constant --dims 4,4,4 --d 1,2,3 --well 1 --out " + field).exit_code == 0);

    SUBCASE("corrupted payload is a format error") {
        // Truncate the file mid-payload.
        const auto size = fs::file_size(field);
        fs::resize_file(field, size - 16);
        CHECK(run_cli("verify " + field).exit_code == 4);
    }

    SUBCASE("a flipped cell fails verification with a named equation") {
        // Flip one e12 value: byte offset of cell 9, component e12 (index 5).
        std::fstream f(field, std::ios::in | std::ios::out | std::ios::binary);
        std::string line;
        std::getline(f, line); // magic
        std::getline(f, line); // header
        const auto payload_start = f.tellg();
        f.seekp(payload_start + std::streamoff((9 * 6 + 5) * 8));
        const double flipped = -1.0;
        f.write(reinterpret_cast<const char*>(&flipped), 8);
        f.close();

        const RunResult verify = run_cli("verify " + field + " --d 1,2,3");
        CHECK(verify.exit_code == 1);
        const json vjson = json::parse(verify.output);
        CHECK_FALSE(vjson["pass"].get<bool>());
        bool some_positive = false;
        for (const auto& name : {"wave_e12", "curl_e11", "curl_e22", "curl_e33"})
            if (vjson["residuals"][name]["max_abs"].get<double>() > 1e-6) some_positive = true;
        CHECK(some_positive);
        CHECK(vjson["inclusion"]["unmasked_defects"].get<int>() > 0);
    }
}

TEST_CASE("classify rejects a random field") {
    TempDir dir;
    // A hand-written field whose off-diagonals are not two-valued.
    const std::string field = dir.file("junk.sfield");
    CHECK(run_cli("gen constant --dims 4,4,4 --d 0,0,0 --well 1 --out " + field).exit_code == 0);
    std::fstream f(field, std::ios::in | std::ios::out | std::ios::binary);
    std::string line;
    std::getline(f, line);
    std::getline(f, line);
    const auto payload_start = f.tellg();
    f.seekp(payload_start + std::streamoff((3 * 6 + 3) * 8)); // cell 3, e23
    const double v = 0.25;
    f.write(reinterpret_cast<const char*>(&v), 8);
    f.close();

    const RunResult r = run_cli("classify " + field + " --d 0,0,0");
    CHECK(r.exit_code == 1);
    const json parsed = json::parse(r.output);
    CHECK(parsed["kind"] == "Inadmissible");
    CHECK(parsed["diagnostics"]["failed_stage"] == "inclusion");
}

TEST_CASE("export slices") {
    TempDir dir;
    const std::string field = dir.file("cross.sfield");
    CHECK(run_cli("gen crossing --dims 8,4,8 --d 1,2,3 --axis 2 --f ++++---- --g +-+-+-+- --out " +
                  field)
              .exit_code == 0);

    const std::string csv = dir.file("slice.csv");
    const RunResult r = run_cli("export " + field + " --component e12 --axis 2 --index 0 --out " + csv);
    CHECK(r.exit_code == 0);

    std::ifstream in(csv);
    std::string line;
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        int cols = 1;
        for (char ch : line)
            if (ch == ',') ++cols;
        CHECK(cols == 8);
        // Every value is +/-1.
        std::stringstream ss(line);
        std::string tok;
        while (std::getline(ss, tok, ','))
            CHECK(std::abs(std::abs(std::stod(tok)) - 1.0) < 1e-12);
    }
    CHECK(rows == 8);

    CHECK(run_cli("export " + field + " --component e12 --axis 2 --index 99 --out " + csv)
              .exit_code == 2);
    CHECK(run_cli("export " + field + " --component bogus --axis 2 --index 0 --out " + csv)
              .exit_code == 2);
}

TEST_CASE("constant field exports a constant slice") {
    TempDir dir;
    const std::string field = dir.file("const.sfield");
    CHECK(run_cli("gen constant --dims 4,4,4 --d 1,2,3 --well 2 --out " + field).exit_code == 0);
    const std::string csv = dir.file("slice.csv");
    CHECK(run_cli("export " + field + " --component e12 --axis 1 --index 2 --out " + csv)
              .exit_code == 0);
    std::ifstream in(csv);
    std::string line;
    while (std::getline(in, line)) {
        std::stringstream ss(line);
        std::string tok;
        while (std::getline(ss, tok, ',')) CHECK(std::stod(tok) == -1.0);
    }
}
