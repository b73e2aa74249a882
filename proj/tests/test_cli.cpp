#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "lopc/cli.hpp"

using namespace lopc;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result call(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.emplace_back();
        rows.push_back(cells);
    }
    return rows;
}

const std::filesystem::path fixtures = LOPC_FIXTURE_DIR;

} // namespace

TEST_CASE("verify exit codes") {
    CHECK(call({"verify", "--variant", "basic", "--steps", "21"}).code == cli::kSuccess);
    CHECK(call({"verify", "--variant", "ff"}).code == cli::kSuccess);
    // Alternate-port branches are CPhase(phi + pi), so dual and full do not verify.
    CHECK(call({"verify", "--variant", "full", "--steps", "3"}).code == cli::kVerificationFailed);
    CHECK(call({"verify", "--variant", "bogus"}).code == cli::kUsageError);
    CHECK(call({}).code == cli::kUsageError);
    CHECK(call({"verify", "--steps", "0"}).code == cli::kUsageError);
}

TEST_CASE("verify full reports p = 1/12") {
    const Result r = call({"verify", "--variant", "full", "--steps", "3", "--format", "json"});
    const auto j = nlohmann::json::parse(r.out);
    REQUIRE(j.is_array());
    REQUIRE(j.size() == 3);
    for (const auto& row : j) CHECK(std::abs(row["p_success"].get<double>() - 1.0 / 12.0) < 1e-12);
}

TEST_CASE("verify on a netlist file") {
    CHECK(call({"verify", "--netlist", (fixtures / "basic.lopc").string()}).code == cli::kSuccess);
    const Result broken = call({"verify", "--netlist", (fixtures / "mutations" / "unknown_keyword.lopc").string()});
    CHECK(broken.code == cli::kUsageError);
    CHECK(broken.err.find("unknown_keyword.lopc:18:1: error:") != std::string::npos);
    CHECK(call({"verify", "--netlist", (fixtures / "does_not_exist.lopc").string()}).code == cli::kUsageError);
}

TEST_CASE("sweep csv layout") {
    const Result r = call({"sweep", "--variant", "basic", "--steps", "3"});
    REQUIRE(r.code == cli::kSuccess);
    const auto rows = csv_rows(r.out);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0] == std::vector<std::string>{"phi_rad", "p_success", "fidelity", "branch", "branch_prob"});
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(std::abs(std::stod(rows[i][1]) - 1.0 / 48.0) < 1e-15);
        CHECK(std::abs(std::stod(rows[i][2]) - 1.0) < 1e-12);
        CHECK(rows[i][3] == "D:T_OUT");
    }
    CHECK(r.out.find('\r') == std::string::npos);

    const auto full = csv_rows(call({"sweep", "--variant", "full", "--phi", "0.5"}).out);
    CHECK(full.size() == 5);
}

TEST_CASE("sweep json carries the csv values") {
    const auto csv = csv_rows(call({"sweep", "--variant", "ff", "--steps", "4"}).out);
    const auto j = nlohmann::json::parse(call({"sweep", "--variant", "ff", "--steps", "4", "--format", "json"}).out);
    REQUIRE(j.size() + 1 == csv.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        CHECK(j[i]["phi_rad"].get<double>() == std::stod(csv[i + 1][0]));
        CHECK(j[i]["p_success"].get<double>() == std::stod(csv[i + 1][1]));
        CHECK(j[i]["branch"].get<std::string>() == csv[i + 1][3]);
        CHECK(j[i]["branch_prob"].get<double>() == std::stod(csv[i + 1][4]));
    }
}

TEST_CASE("sweep degrees flag") {
    const auto deg = csv_rows(call({"sweep", "--phi", "180", "--degrees"}).out);
    const auto rad = csv_rows(call({"sweep", "--phi", "3.141592653589793"}).out);
    CHECK(deg[1][0] == rad[1][0]);
}

TEST_CASE("sweep output is byte-identical across runs and meta is opt-in") {
    const auto a = call({"sweep", "--variant", "full", "--steps", "11"}).out;
    const auto b = call({"sweep", "--variant", "full", "--steps", "11"}).out;
    CHECK(a == b);
    CHECK(a.find('#') == std::string::npos);
    const auto meta = call({"sweep", "--steps", "2", "--meta"}).out;
    CHECK(meta.rfind("#", 0) == 0);
}

TEST_CASE("sweep --out writes a file") {
    const auto path = std::filesystem::temp_directory_path() / "lopc_cli_test_sweep.csv";
    std::filesystem::remove(path);
    REQUIRE(call({"sweep", "--steps", "2", "--out", path.string()}).code == cli::kSuccess);
    std::ifstream in(path);
    std::ostringstream s;
    s << in.rdbuf();
    CHECK(s.str() == call({"sweep", "--steps", "2"}).out);
    std::filesystem::remove(path);
}

TEST_CASE("hom command") {
    const auto rows = csv_rows(call({"hom", "--steps", "3"}).out);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0] == std::vector<std::string>{"v", "coincidence"});
    CHECK(std::abs(std::stod(rows[1][1]) - 5.0 / 9.0) < 1e-12);
    CHECK(std::abs(std::stod(rows[2][1]) - 1.0 / 3.0) < 1e-12);
    CHECK(std::abs(std::stod(rows[3][1]) - 1.0 / 9.0) < 1e-12);

    const auto dip = csv_rows(call({"hom", "--tv", "0.7071067811865476", "--from", "1", "--to", "1", "--steps", "1"}).out);
    CHECK(std::abs(std::stod(dip[1][1])) < 1e-12);

    CHECK(call({"hom", "--from", "0", "--to", "2"}).code == cli::kUsageError);
}
