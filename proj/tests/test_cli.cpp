#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "ebound/sweep_table.hpp"

using namespace ebound;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result call(std::vector<std::string> args) {
  args.insert(args.begin(), "ebound");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

SweepTable table(const Result& r) {
  std::istringstream in(r.out);
  return read_csv(in);
}

std::string meta(const SweepTable& t, const std::string& key) {
  for (const auto& [k, v] : t.metadata)
    if (k == key) return v;
  return "<missing>";
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("point at zero power") {
  const Result r = call({"point", "--sigma", "1", "--power", "0", "--rate", "0"});
  REQUIRE(r.code == cli::kExitOk);
  const SweepTable t = table(r);
  REQUIRE(t.rows.size() == 1);
  CHECK(*t.rows[0].lower == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(*t.rows[0].upper == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(meta(t, "seed") == "none");
  CHECK(meta(t, "argv") == "ebound point --sigma 1 --power 0 --rate 0");
  CHECK(meta(t, "version") == EBOUND_VERSION);
}

TEST_CASE("capacity equals the alpha = 1 rate") {
  const Result r = call({"capacity", "--sigma", "1", "--power", "1"});
  REQUIRE(r.code == cli::kExitOk);
  const SweepTable t = table(r);
  REQUIRE(t.rows.size() == 1);
  CHECK(std::abs(*t.rows[0].lower - *t.rows[0].upper) <= 1e-9);
  CHECK(t.rows[0].sigma_su_star.has_value());
  CHECK(call({"capacity", "--sigma", "1", "--pmin", "0.5", "--pmax", "2", "--n", "4"}).code == cli::kExitOk);
}

TEST_CASE("every subcommand emits a parseable table") {
  const std::vector<std::vector<std::string>> cases{
      {"lower", "--sigma", "2", "--power", "0.3", "--bound", "legacy"},
      {"upper", "--sigma", "2", "--power", "3", "--rate", "1"},
      {"cost-ratio", "--kmin", "0.1", "--kmax", "1", "--smin", "0.5", "--smax", "2", "--n", "3"},
      {"mmse-ratio", "--pmin", "0.1", "--pmax", "1", "--smin", "0.5", "--smax", "2", "--n", "3", "--ns", "2"},
      {"power-ratio", "--fmin", "0.2", "--fmax", "0.8", "--smin", "0.5", "--smax", "2", "--n", "2"},
      {"rate-sweep", "--sigma", "1", "--power", "1", "--n", "5"},
  };
  for (const auto& c : cases) {
    CAPTURE(c[0]);
    const Result r = call(c);
    REQUIRE(r.code == cli::kExitOk);
    const SweepTable t = table(r);
    CHECK(t.rows.size() == t.axis1.size() * t.axis2.size());
    std::ostringstream again;
    write_csv(again, t);
    CHECK(again.str() == r.out);
  }
}

TEST_CASE("identical argv gives identical bytes, whatever the thread count") {
  const std::vector<std::string> base{"mmse-ratio", "--pmin", "0.1", "--pmax", "2", "--smin", "0.3", "--smax", "3", "--n", "4"};
  auto with = [&](std::vector<std::string> extra) {
    auto a = base;
    a.insert(a.end(), extra.begin(), extra.end());
    return call(a);
  };
  const Result one = with({"--threads", "1"});
  REQUIRE(one.code == cli::kExitOk);
  CHECK(with({"--threads", "1"}).out == one.out);
  CHECK(with({"--threads", "3"}).out == one.out);
  CHECK(with({"--threads=2"}).out == one.out);
}

TEST_CASE("exit codes") {
  CHECK(call({}).code == cli::kExitUsage);
  CHECK(call({"point", "--power", "1", "--bogus"}).code == cli::kExitUsage);
  CHECK(call({"point"}).code == cli::kExitUsage);
  CHECK(call({"frobnicate"}).code == cli::kExitUsage);
  CHECK(call({"validate"}).code == cli::kExitUsage);  // --seed is mandatory
  CHECK(call({"point", "--power", "abc"}).code == cli::kExitUsage);
  CHECK(call({"point", "--power", "1", "--threads", "0"}).code == cli::kExitUsage);
  CHECK(call({"capacity", "--power", "1", "--pmin", "0.5"}).code == cli::kExitUsage);

  CHECK(call({"point", "--sigma", "0", "--power", "1"}).code == cli::kExitValidation);
  CHECK(call({"point", "--sigma", "1", "--power", "-1"}).code == cli::kExitValidation);
  const Result inf = call({"point", "--sigma", "1", "--power", "0.9", "--rate", "0.5"});
  CHECK(inf.code == cli::kExitValidation);
  CHECK(inf.out.empty());
  CHECK(inf.err.find("infeasible") != std::string::npos);
  CHECK(call({"lower", "--power", "1", "--rate", "0.2", "--bound", "legacy"}).code == cli::kExitValidation);
  CHECK(call({"rate-sweep", "--power", "1", "--rmax", "0.6"}).code == cli::kExitValidation);
  CHECK(call({"validate", "--seed", "1", "--samples", "10"}).code == cli::kExitValidation);

  CHECK(call({"point", "--power", "1", "-o", "/nonexistent/dir/x.csv"}).code == cli::kExitUsage);
  const Result help = call({"--help"});
  CHECK(help.code == cli::kExitOk);
  CHECK(help.out.find("cost-ratio") != std::string::npos);
  CHECK(call({"--version"}).out.find(EBOUND_VERSION) != std::string::npos);
}

TEST_CASE("output file") {
  const std::string path = "ebound_cli_test_output.csv";
  const Result r = call({"point", "--sigma", "1", "--power", "0.5", "-o", path});
  REQUIRE(r.code == cli::kExitOk);
  CHECK(r.out.empty());
  std::ifstream in(path);
  const SweepTable t = read_csv(in);
  CHECK(t.rows.size() == 1);
  std::remove(path.c_str());
}

TEST_CASE("validate passes and is reproducible") {
  const Result a = call({"validate", "--seed", "7", "--samples", "20000"});
  CHECK(a.code == cli::kExitOk);
  CHECK(a.out.find("8/8 checks passed (seed 7)") != std::string::npos);
  CHECK(call({"validate", "--seed", "7", "--samples", "20000", "--threads", "2"}).out == a.out);
}

}
