#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "subprocess.hpp"

using nlohmann::json;
using testutil::cli_path;
using testutil::run;

namespace {

namespace fs = std::filesystem;

fs::path write_temp(const std::string& name, const std::string& content) {
    const fs::path path = fs::temp_directory_path() / name;
    std::ofstream out(path);
    out << content;
    return path;
}

// Minimal well-formedness check: tags balance and attributes are quoted.
bool xml_well_formed(const std::string& text) {
    std::vector<std::string> stack;
    size_t pos = 0;
    if (text.rfind("<?xml", 0) == 0) pos = text.find("?>");
    if (pos == std::string::npos) return false;
    while (true) {
        const size_t open = text.find('<', pos);
        if (open == std::string::npos) break;
        const size_t close = text.find('>', open);
        if (close == std::string::npos) return false;
        std::string tag = text.substr(open + 1, close - open - 1);
        pos = close + 1;
        if (tag.empty()) return false;
        if (tag[0] == '?') continue;
        if (tag[0] == '/') {
            if (stack.empty() || stack.back() != tag.substr(1)) return false;
            stack.pop_back();
            continue;
        }
        const bool self_closing = tag.back() == '/';
        const std::string name = tag.substr(0, tag.find_first_of(" \t\n/"));
        if (!self_closing) stack.push_back(name);
    }
    return stack.empty();
}

} // namespace

TEST_CASE("cli analyze") {
    const auto spec = write_temp("isotoda_spec012.json", "{\"lambda\":[0,1,2]}");
    const auto r = run(cli_path() + " analyze --in " + spec.string());
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(j["n_plus"] == 1);
    CHECK(j["n_minus"] == 1);
    CHECK(j["manifold"] == "NoObstructionGenericSmooth");
    CHECK(j["pi1_rank"] == 0);
    CHECK(std::abs(j["M"].get<double>() - 0.384900179460) < 1e-10);
    CHECK(std::abs(j["m"].get<double>() - 0.384900179460) < 1e-10);
}

TEST_CASE("cli analyze flags degenerate spectra") {
    // Chebyshev roots for n = 5, written at full precision
    std::ostringstream spec;
    spec.precision(17);
    spec << "{\"lambda\":[";
    for (int k = 5; k >= 1; --k) {
        spec << std::cos((2.0 * k - 1.0) * M_PI / 10.0);
        if (k > 1) spec << ",";
    }
    spec << "]}";
    const auto path = write_temp("isotoda_cheb5.json", spec.str());
    const auto r =
        run(cli_path() + " analyze --in " + path.string() + " --grouping-tol 1e-8");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(j["manifold"] == "NotHomologyManifold");
    CHECK(j["n_plus"].get<int>() + j["n_minus"].get<int>() == 4);
}

TEST_CASE("cli rejects a non-increasing spectrum with exit 2") {
    const auto spec = write_temp("isotoda_bad.json", "{\"lambda\":[1,1,2]}");
    const auto r = run(cli_path() + " analyze --in " + spec.string() + " 2>/dev/null");
    CHECK(r.exit_code == 2);
}

TEST_CASE("cli betti-table matches the published tables") {
    const auto r = run(cli_path() + " betti-table --n-max 6");
    REQUIRE(r.exit_code == 0);
    const std::string expected =
        "# manifold case (n_plus = 1, n_minus = 1)\n"
        "3,1,0,2,0,2,0,1\n"
        "4,1,1,6,2,16,2,6,1,1\n"
        "5,1,2,13,9,65,16,65,9,13,2,1\n"
        "6,1,3,23,25,203,67,456,67,203,25,23,3,1\n"
        "# most degenerate case (n_plus + n_minus = n - 1)\n"
        "4,1,0,3,1,16,3,9,2,1\n"
        "5,1,0,4,2,57,16,77,22,24,4,1\n"
        "6,1,0,5,4,167,55,471,115,276,61,39,5,1\n";
    CHECK(r.out == expected);
}

TEST_CASE("cli betti-table n-max 3 has an empty degenerate section") {
    const auto r = run(cli_path() + " betti-table --n-max 3");
    REQUIRE(r.exit_code == 0);
    const auto marker = r.out.find("# most degenerate");
    REQUIRE(marker != std::string::npos);
    CHECK(r.out.find(',', marker) == std::string::npos);
}

TEST_CASE("cli bset svg output") {
    const auto spec = write_temp("isotoda_spec012.json", "{\"lambda\":[0,1,2]}");
    const auto r = run(cli_path() + " bset --in " + spec.string() + " --samples 32");
    REQUIRE(r.exit_code == 0);
    CHECK(xml_well_formed(r.out));
    CHECK(r.out.find("<polyline") != std::string::npos);
    CHECK(r.out.find("<circle") != std::string::npos);

    // byte determinism
    const auto r2 = run(cli_path() + " bset --in " + spec.string() + " --samples 32");
    CHECK(r.out == r2.out);
}

TEST_CASE("cli bset point query") {
    const auto spec = write_temp("isotoda_spec012.json", "{\"lambda\":[0,1,2]}");
    const auto r = run(cli_path() + " bset --in " + spec.string() +
                       " --z-re -0.09622504486 --z-im 0 --tol 1e-6");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(j["location"] == "BoundaryPlus");
    CHECK(j["fiber_dim"] == 1);
}

TEST_CASE("cli toda trajectory and report") {
    const auto mat = write_temp(
        "isotoda_mat.json",
        "{\"a\":[0.1,-0.2,0.3,0.05],"
        "\"b\":[[0.5,0.1],[0.4,-0.2],[0.6,0.05],[0.45,0.3]]}");
    const fs::path csv = fs::temp_directory_path() / "isotoda_traj.csv";
    const auto r = run(cli_path() + " toda --in " + mat.string() +
                       " --t-end 1 --dt 0.001 --stride 100 --out " + csv.string());
    REQUIRE(r.exit_code == 0);
    const json report = json::parse(r.out);
    CHECK(report["failed"] == false);
    CHECK(report["max_drift"]["spectrum"].get<double>() < 1e-10);

    std::ifstream in(csv);
    std::string header;
    std::getline(in, header);
    CHECK(header ==
          "t,a1,a2,a3,a4,re_b1,im_b1,re_b2,im_b2,re_b3,im_b3,re_b4,im_b4,"
          "drift_spectrum,drift_abs_b,drift_arg_b");
    int rows = 0;
    for (std::string line; std::getline(in, line);) ++rows;
    CHECK(rows == 11);  // t=0 plus 10 strided records
}

TEST_CASE("cli betti-table json rows carry euler and pi1_rank") {
    const auto r = run(cli_path() + " betti-table --n-max 5 --format json");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    REQUIRE(j["manifold"].size() == 3);
    CHECK(j["manifold"][2]["n"] == 5);
    CHECK(j["manifold"][2]["euler"] == 120);
    CHECK(j["manifold"][2]["pi1_rank"] == 2);
    CHECK(j["degenerate"][0]["n_plus"] == 1);
    CHECK(j["degenerate"][0]["n_minus"] == 2);
    CHECK(j["degenerate"][0]["pi1_rank"] == 0);
}

TEST_CASE("cli toda exits 3 when a drift monitor trips") {
    const auto mat = write_temp(
        "isotoda_mat.json",
        "{\"a\":[0.1,-0.2,0.3,0.05],"
        "\"b\":[[0.5,0.1],[0.4,-0.2],[0.6,0.05],[0.45,0.3]]}");
    const auto r = run(cli_path() + " toda --in " + mat.string() +
                       " --t-end 1 --dt 0.001 --tol 1e-17 --out /dev/null");
    CHECK(r.exit_code == 3);
    const json report = json::parse(r.out);
    CHECK(report["failed"] == true);
}

TEST_CASE("cli monodromy on a seeded random matrix") {
    const auto r = run("ISOTODA_SEED=9 " + cli_path() + " monodromy --n 5 --x 0.4");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(std::abs(j["det"].get<double>() - 1.0) < 1e-10);
    CHECK(j["P"].size() == 6);
    CHECK(std::abs(j["P"][5].get<double>() - 1.0) < 1e-8);
}

TEST_CASE("cli zones on a seeded random matrix") {
    const auto r = run("ISOTODA_SEED=11 " + cli_path() + " zones --n 4");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(j["zones"].size() == 3);
    CHECK(j["roots"].size() == 8);
    for (const auto& z : j["zones"]) CHECK(z["collapsed"] == false);
    CHECK(j["collapsed_upper"] == 0);
    CHECK(j["collapsed_lower"] == 0);
}

TEST_CASE("cli bset json format lists the boundary radii") {
    const auto spec = write_temp("isotoda_spec012.json", "{\"lambda\":[0,1,2]}");
    const auto r = run(cli_path() + " bset --in " + spec.string() +
                       " --format json --samples 16");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(j["boundary"].size() == 17);
    // theta = -pi comes first; the radius there is M/4
    CHECK(std::abs(j["boundary"][0][1].get<double>() -
                   j["M"].get<double>() / 4) < 1e-10);
}

TEST_CASE("cli tiling and hilbert golden output") {
    const auto rt = run(cli_path() + " tiling --n 3");
    REQUIRE(rt.exit_code == 0);
    const json jt = json::parse(rt.out);
    CHECK(jt["f"] == json::parse("[1,3,9,6]"));
    CHECK(jt["h"] == json::parse("[1,0,6,-1]"));
    CHECK(jt["face_counts_by_dim"] == json::parse("[6,9,3]"));
    CHECK(jt["crystallization"]["minimal_vertices"] == true);

    const auto rh = run(cli_path() + " hilbert --n 3 --terms 8");
    REQUIRE(rh.exit_code == 0);
    const json jh = json::parse(rh.out);
    CHECK(jh["collar"] == json::parse("[1,2,5,1,9,0,15,0]"));
    CHECK(jh["principal"] == json::parse("[1,0,2,0,9,0,15,0]"));
    CHECK(jh["full_space"] == json::parse("[1,0,4,0,9,0,15,0]"));
}

TEST_CASE("cli config file supplies defaults") {
    const auto cfg = write_temp("isotoda_cfg.json", "{\"terms\": 4}");
    const auto r = run(cli_path() + " hilbert --n 3 --config " + cfg.string());
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(j["terms"] == 4);
    CHECK(j["collar"].size() == 4);

    const auto bad = write_temp("isotoda_cfg_bad.json", "{\"nope\": 1}");
    const auto rb = run(cli_path() + " hilbert --n 3 --config " + bad.string() +
                        " 2>/dev/null");
    CHECK(rb.exit_code == 2);
}

TEST_CASE("cli outputs are byte deterministic") {
    const auto a = run(cli_path() + " betti-table --n-max 5");
    const auto b = run(cli_path() + " betti-table --n-max 5");
    CHECK(a.out == b.out);
    const auto h1 = run(cli_path() + " hilbert --n 4 --terms 12");
    const auto h2 = run(cli_path() + " hilbert --n 4 --terms 12");
    CHECK(h1.out == h2.out);
}
