#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "pathalg/cli.hpp"

using nlohmann::json;
namespace fs = std::filesystem;
namespace cli = pathalg::cli;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "pathalg");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / "pathalg_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("algebra examples") {
    auto r = run({"algebra", "--family", "1", "--d", "3", "--c", "0", "--show", "cartan"});
    CHECK(r.code == cli::kOk);
    CHECK(json::parse(r.out) == json::parse("[[8,4],[4,3]]"));
    r = run({"algebra", "--family", "2", "--hat", "--d", "3", "--chat", "0", "--show", "dim"});
    CHECK(r.code == cli::kOk);
    CHECK(r.out == "22\n");
    r = run({"algebra", "--family", "1", "--d", "6"});
    CHECK(r.code == cli::kUsage);
    CHECK(r.err.find("--allow-large") != std::string::npos);
  }

  TEST_CASE("algebra report fields") {
    auto r = run({"algebra", "--family", "2", "--d", "4", "--c", "w", "--field", "gf4", "--show", "dim,loewy,key"});
    REQUIRE(r.code == cli::kOk);
    auto j = json::parse(r.out);
    CHECK(j["dim"] == 13);
    CHECK(j["loewy"] == 5);
    CHECK(j["key"] == "L2(d=4,c=w,gf4)");
    r = run({"algebra", "--family", "1", "--d", "3"});
    REQUIRE(r.code == cli::kOk);
    j = json::parse(r.out);
    for (const char* k : {"key", "generators", "dim", "projectives", "loewy", "socle", "cartan"}) CHECK(j.contains(k));
    CHECK(j["socle"].size() == 2);
    r = run({"algebra", "--j", "--family", "1", "--d", "3", "--c1", "1", "--c2", "w", "--field", "gf4", "--show", "key"});
    CHECK(r.out == "\"J1(d=3,c1=1,c2=w,gf4)\"\n");
  }

  TEST_CASE("algebra usage errors") {
    CHECK(run({"algebra", "--family", "3"}).code == cli::kUsage);
    CHECK(run({"algebra", "--c", "w"}).code == cli::kUsage);
    CHECK(run({"algebra", "--show", "colour"}).code == cli::kUsage);
    CHECK(run({"algebra", "--hat", "--j"}).code == cli::kUsage);
    CHECK(run({"algebra", "--j", "--family", "1", "--c3", "1"}).code == cli::kUsage);
    CHECK(run({"algebra", "--field", "gf3"}).code == cli::kUsage);
    CHECK(run({}).code == cli::kUsage);
    CHECK(run({"--help"}).code == cli::kOk);
    // J2 with c1 = 0 is infinite-dimensional
    CHECK(run({"algebra", "--j", "--family", "2"}).code == cli::kFailed);
  }

  TEST_CASE("verify examples") {
    auto r = run({"verify", "--family", "1", "--d", "3", "--field", "gf2"});
    REQUIRE(r.code == cli::kOk);
    auto j = json::parse(r.out);
    CHECK(j["schema"] == 1);
    REQUIRE(j["steps"].size() == 8);
    for (const auto& s : j["steps"]) {
      CHECK(s["status"] == "pass");
      for (const char* k : {"step", "key", "claim", "expected", "actual"}) CHECK(s.contains(k));
    }
    r = run({"verify", "--family", "2", "--d", "4", "--field", "gf4"});
    CHECK(r.code == cli::kOk);
    r = run({"verify", "--inject", "c2=w"});
    CHECK(r.code == cli::kFailed);
    j = json::parse(r.out);
    CHECK(j["steps"].back()["step"] == 7);
    CHECK(j["steps"].back()["status"] == "fail");
    CHECK(j["config"]["inject"] == "c2=w");
  }

  TEST_CASE("verify usage errors") {
    CHECK(run({"verify", "--d", "6"}).code == cli::kUsage);
    CHECK(run({"verify", "--budget", "0"}).code == cli::kUsage);
    CHECK(run({"verify", "--budget", "16777217"}).code == cli::kUsage);
    CHECK(run({"verify", "--inject", "c3=w"}).code == cli::kUsage);
    CHECK(run({"verify", "--inject", "c2"}).code == cli::kUsage);
    CHECK(run({"verify", "--family", "2", "--c1-grid", "0"}).code == cli::kUsage);
    CHECK(run({"verify", "--chat-grid", "w"}).code == cli::kUsage);
  }

  TEST_CASE("reports are written atomically and are deterministic") {
    const fs::path a = scratch("a.json"), b = scratch("b.json");
    auto r1 = run({"verify", "--family", "1,2", "--d", "3", "--threads", "1", "--out", a.string()});
    REQUIRE(r1.code == cli::kOk);
    CHECK(r1.out.find("step 8 pass") != std::string::npos);
    auto r2 = run({"verify", "--family", "2,1", "--d", "3", "--threads", "4", "--out", b.string()});
    REQUIRE(r2.code == cli::kOk);
    CHECK(slurp(a) == slurp(b));
    CHECK_FALSE(fs::exists(fs::path(a.string() + ".tmp")));
    CHECK(json::parse(slurp(a))["steps"].size() == 16);
  }

  TEST_CASE("write_atomic replaces the target") {
    const fs::path p = scratch("atomic.txt");
    cli::write_atomic(p, "first");
    cli::write_atomic(p, "second");
    CHECK(slurp(p) == "second");
    CHECK_THROWS(cli::write_atomic(scratch("missing") / "x" / "y.txt", "z"));
  }

  TEST_CASE("config file fills unset flags") {
    const fs::path cfg = scratch("verify.conf");
    std::ofstream(cfg) << "family=2\nd=3\nfield=gf4\n";
    auto r = run({"verify", "--config", cfg.string()});
    REQUIRE(r.code == cli::kOk);
    auto j = json::parse(r.out);
    CHECK(j["config"]["families"] == json::array({2}));
    CHECK(j["config"]["field"] == "gf4");
    r = run({"verify", "--config", cfg.string(), "--field", "gf2"});
    REQUIRE(r.code == cli::kOk);
    CHECK(json::parse(r.out)["config"]["field"] == "gf2");
    std::ofstream(cfg) << "colour=blue\n";
    CHECK(run({"verify", "--config", cfg.string()}).code == cli::kUsage);
    CHECK(run({"verify", "--config", scratch("absent.conf").string()}).code == cli::kUsage);
  }

  TEST_CASE("thread cap from the environment") {
    ::setenv("QF_THREADS", "2", 1);
    CHECK(cli::effective_threads(8) == 2);
    CHECK(cli::effective_threads(1) == 1);
    CHECK(cli::effective_threads(0) <= 2);
    ::setenv("QF_THREADS", "junk", 1);
    CHECK(cli::effective_threads(3) == 3);
    ::unsetenv("QF_THREADS");
    CHECK(cli::effective_threads(5) == 5);
  }

  TEST_CASE("field names") {
    CHECK(cli::parse_field("gf2") == 1);
    CHECK(cli::parse_field("GF(4)") == 2);
    CHECK(cli::parse_field("256") == 8);
    CHECK_THROWS(cli::parse_field("gf6"));
  }

  TEST_CASE("groups examples") {
    auto r = run({"groups", "verify", "--q", "3"});
    REQUIRE(r.code == cli::kOk);
    auto j = json::parse(r.out);
    CHECK(j["pgl_order"] == 24);
    CHECK(j["sylow"] == "dihedral(8)");
    CHECK(j["ghat_order"] == 48);
    CHECK(j["ghat_sylow"] == "quaternion(16)");
    CHECK(j["center"] == 2);
    r = run({"groups", "verify", "--q", "5"});
    REQUIRE(r.code == cli::kOk);
    j = json::parse(r.out);
    CHECK(j["sylow"] == "dihedral(8)");
    CHECK(j["ghat_sylow"] == "quaternion(16)");
    CHECK(run({"groups", "verify", "--q", "4"}).code == cli::kUsage);
    CHECK(run({"groups", "verify"}).code == cli::kUsage);
  }

  TEST_CASE("installed binary exit codes") {
    const std::string bin = CLI_BINARY;
    auto status = [&](const std::string& args) {
      const int s = std::system((bin + " " + args + " >/dev/null 2>&1").c_str());
      return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
    };
    CHECK(status("algebra --family 1 --d 3 --show dim") == 0);
    CHECK(status("algebra --family 1 --d 6") == 2);
    CHECK(status("groups verify --q 4") == 2);
  }
}
