#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "irbox/cli.hpp"
#include "svg_check.hpp"
#include "test_util.hpp"

namespace fs = std::filesystem;
using irbox::cli::run;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result irbox_run(std::vector<std::string> args) {
  args.insert(args.begin(), "irbox");
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = fs::temp_directory_path() / ("irbox-cli-" + std::to_string(rd()));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string write(const std::string& name, const std::string& content) const {
    std::ofstream(path_ / name, std::ios::binary) << content;
    return (path_ / name).string();
  }
  std::string path(const std::string& name) const { return (path_ / name).string(); }
  static std::string read(const std::string& file) {
    std::ifstream in(file, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }

 private:
  fs::path path_;
};

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("indices on a two-row CSV") {
    TempDir dir;
    auto csv = dir.write("p.csv", "firm_id,period,debt,equity\nA,1,1,1\nB,1,3,1\n");
    auto r = irbox_run({"indices", csv});
    CHECK(r.code == 0);
    CHECK(r.out.find("A,1,1,1,,2,0,2,1,") != std::string::npos);
    CHECK(r.out.find("B,1,3,1,,4,2,2,0.5,") != std::string::npos);

    auto j = irbox_run({"--format", "json", "indices", csv});
    REQUIRE(j.code == 0);
    auto doc = json::parse(j.out);
    CHECK(doc["records"][0]["firi"] == 1.0);
    CHECK(doc["records"][1]["firi"] == 0.5);
    // global flags also work after the subcommand
    CHECK(irbox_run({"indices", csv, "--format", "json"}).out == j.out);
  }

  TEST_CASE("missing column exits 2 and names it") {
    TempDir dir;
    auto csv = dir.write("p.csv", "firm_id,period,debt\nA,1,1\n");
    auto r = irbox_run({"indices", csv});
    CHECK(r.code == 2);
    CHECK(r.err.find("equity") != std::string::npos);
  }

  TEST_CASE("degenerate row exits 3 and names firm and period") {
    TempDir dir;
    auto csv = dir.write("p.csv", "firm_id,period,debt,equity\nA,1,1,1\nB,1,0,0\n");
    auto r = irbox_run({"indices", csv});
    CHECK(r.code == 3);
    CHECK(r.err.find("B@1") != std::string::npos);
    CHECK(r.err.find(":3:") != std::string::npos);
    CHECK(r.err.find("DegenerateRecord") != std::string::npos);
  }

  TEST_CASE("panel axis inference") {
    TempDir dir;
    auto mixed = dir.write("m.csv", "firm_id,period,debt,equity\nA,1,1,1\nB,2,1,1\n");
    CHECK(irbox_run({"indices", mixed}).code == 3);
    auto series = dir.write("s.csv", "firm_id,period,debt,equity\nA,1,1,1\nA,2,1,2\n");
    CHECK(irbox_run({"indices", series}).code == 0);
    CHECK(irbox_run({"indices", series, "--axis", "cross-section"}).code == 3);
  }

  TEST_CASE("tolerance flag and environment override") {
    TempDir dir;
    auto csv = dir.write("p.csv", "firm_id,period,debt,equity,assets\nA,1,1,1,2.001\n");
    CHECK(irbox_run({"indices", csv}).code == 3);
    CHECK(irbox_run({"--tolerance", "1e-3", "indices", csv}).code == 0);
    ::setenv("IRBOX_TOLERANCE", "1e-3", 1);
    CHECK(irbox_run({"indices", csv}).code == 0);
    ::unsetenv("IRBOX_TOLERANCE");
  }

  TEST_CASE("distress rows need the flag") {
    TempDir dir;
    auto csv = dir.write("p.csv", "firm_id,period,debt,equity\nA,1,2,-1\nB,1,3,2\nC,1,1,1\nD,1,1,3\n");
    CHECK(irbox_run({"prob", csv}).code == 3);
    auto r = irbox_run({"prob", csv, "--distress"});
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["probability"] == 0.25);
    auto g = irbox_run({"prob", csv, "--distress", "--method", "geometric"});
    REQUIRE(g.code == 0);
    CHECK(json::parse(g.out)["probability"] == 0.25);
  }

  TEST_CASE("gasket stats, svg and triangle list") {
    TempDir dir;
    auto r = irbox_run({"gasket", "--depth", "5", "--svg", dir.path("g.svg"), "--stats", dir.path("g.json"),
                        "--triangles", dir.path("g.bin")});
    REQUIRE(r.code == 0);
    auto stats = json::parse(TempDir::read(dir.path("g.json")));
    CHECK(stats["area_removed"] == "781/1024");
    const auto svg = TempDir::read(dir.path("g.svg"));
    std::size_t polygons = 0;
    for (auto pos = svg.find("<polygon"); pos != std::string::npos; pos = svg.find("<polygon", pos + 1)) ++polygons;
    CHECK(polygons == 486);
    CHECK(irbox::test::check_svg(svg).balanced);

    CHECK(json::parse(irbox_run({"gasket", "--depth", "0"}).out)["area_removed"] == "0/1");
    auto one = json::parse(irbox_run({"gasket", "--depth", "1"}).out);
    CHECK(one["area_removed"] == "1/4");
    CHECK(one["remaining"] == 6);

    // the triangle list feeds the dimension command
    auto d = irbox_run({"--format", "json", "dimension", "--input", dir.path("g.bin"), "--window", "1", "4"});
    REQUIRE(d.code == 0);
    auto fit = json::parse(d.out);
    CHECK(fit["source"] == "file");
    CHECK(fit["samples"][3]["occupied"] == 2 * 81 - 16);
  }

  TEST_CASE("gasket depth limits exit 4") {
    CHECK(irbox_run({"gasket", "--depth", "13"}).code == 4);
    CHECK(irbox_run({"--depth-cap", "3", "gasket", "--depth", "4"}).code == 4);
  }

  TEST_CASE("dimension") {
    auto r = irbox_run({"--format", "json", "dimension", "--depth", "10", "--window", "3", "9"});
    REQUIRE(r.code == 0);
    const double dim = json::parse(r.out)["dimension"];
    CHECK(std::abs(dim - std::log(3.0) / std::log(2.0)) <= 0.06);

    auto sq = irbox_run({"--format", "json", "dimension", "--square"});
    REQUIRE(sq.code == 0);
    CHECK(json::parse(sq.out)["dimension"] == 2.0);

    CHECK(irbox_run({"dimension", "--depth", "6", "--window", "3", "4"}).code == 2);
    CHECK(irbox_run({"dimension", "--depth", "6", "--window", "3", "8"}).code == 2);
    auto csv = irbox_run({"dimension", "--depth", "4", "--window", "0", "4"});
    CHECK(csv.out == "m,occupied\n0,1\n1,4\n2,14\n3,46\n4,146\n");
  }

  TEST_CASE("simulate") {
    TempDir dir;
    auto one = dir.write("one.json", R"({"params":{"r":1.5,"z":0.5,"tau":1,"p":0,"pi_store":0.2},"firms":[{"id":"a","d":3,"e":1,"x":1}]})");
    auto r = irbox_run({"simulate", one});
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["welfare"]["equilibrium_pi"] == 1.5);

    auto balanced = dir.write("bal.json", R"({"params":{"r":1.5,"z":0.5,"tau":1,"p":0,"pi_store":0.2},"firms":[{"d":2,"e":2,"x":1},{"d":7,"e":7,"x":2}]})");
    CHECK(json::parse(irbox_run({"simulate", balanced}).out)["welfare"]["equilibrium_pi"] == 1.0);

    auto unbounded = dir.write("ub.json", R"({"params":{"r":1,"z":1,"tau":1,"p":0,"pi_store":0},"firms":[{"d":1,"e":1,"x":1}]})");
    auto u = irbox_run({"simulate", unbounded});
    CHECK(u.code == 3);
    CHECK(u.err.find("UnboundedProgram") != std::string::npos);

    auto broken = dir.write("bad.json", "{not json");
    CHECK(irbox_run({"simulate", broken}).code == 2);
  }

  TEST_CASE("irbox rendering") {
    TempDir dir;
    auto csv = dir.write("p.csv", "firm_id,period,debt,equity\nA,1,1,1\nB,1,3,1\n");
    auto r = irbox_run({"irbox", csv, "--unity-line", "--firi", "0.5", "-o", dir.path("box.svg")});
    REQUIRE(r.code == 0);
    const auto svg = TempDir::read(dir.path("box.svg"));
    auto check = irbox::test::check_svg(svg);
    CHECK(check.balanced);
    CHECK(check.in_view);
    CHECK(svg.find("id=\"firi-0.5\"") != std::string::npos);
    CHECK_FALSE(fs::exists(dir.path("box.svg.tmp")));

    CHECK(irbox_run({"irbox", csv}).code == 2);
    CHECK(irbox_run({"irbox", csv, "--firi", "1.5"}).code == 2);
    CHECK(irbox_run({"irbox", csv, "--gasket", "5", "--points"}).code == 0);
  }

  TEST_CASE("usage errors exit 2") {
    CHECK(irbox_run({}).code == 2);
    CHECK(irbox_run({"frobnicate"}).code == 2);
    CHECK(irbox_run({"--format", "xml", "gasket", "--depth", "1"}).code == 2);
    CHECK(irbox_run({"indices", "/nonexistent/file.csv"}).code == 2);
    CHECK(irbox_run({"--help"}).code == 0);
  }

  TEST_CASE("exit code mapping") {
    using irbox::ErrorCode;
    using namespace irbox::cli;
    CHECK(exit_code_for(ErrorCode::SchemaViolation) == kInputError);
    CHECK(exit_code_for(ErrorCode::EmptyLayerSet) == kInputError);
    CHECK(exit_code_for(ErrorCode::InsufficientScales) == kInputError);
    CHECK(exit_code_for(ErrorCode::IdentityViolation) == kValidationError);
    CHECK(exit_code_for(ErrorCode::UnboundedProgram) == kValidationError);
    CHECK(exit_code_for(ErrorCode::DepthLimit) == kInternalLimit);
  }
}
