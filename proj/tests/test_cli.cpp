#include <doctest.h>

#include <sstream>

#include "blockfade/cli.hpp"
#include "blockfade/serialization.hpp"

using namespace blockfade;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<json> lines_of(const std::string& text) {
  std::vector<json> rows;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);)
    if (!line.empty()) rows.push_back(json::parse(line));
  return rows;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("list parsing") {
  CHECK(cli::parse_int_list("4") == std::vector<int>{4});
  CHECK(cli::parse_int_list("2:5") == std::vector<int>{2, 3, 4, 5});
  CHECK(cli::parse_int_list("1|3|5") == std::vector<int>{1, 3, 5});
  CHECK_THROWS(cli::parse_int_list("5:2"));
  CHECK_THROWS(cli::parse_int_list("x"));
  CHECK(cli::parse_seed_list("1,2,5:7") == std::vector<std::uint64_t>{1, 2, 5, 6, 7});
  cli::SweepConfig cfg;
  cli::parse_dims("2,3:4,4,1", cfg);
  CHECK(cfg.is_sweep());
  const auto cells = cli::expand(cfg);
  REQUIRE(cells.size() == 2);
  CHECK(cells[1].R == 4);
  CHECK(cells[1].dims.has_value());
}

TEST_CASE("dof on the reference configuration") {
  const Outcome o = run({"dof", "--dims", "2,3,4,1"});
  REQUIRE(o.code == 0);
  const json j = json::parse(o.out);
  CHECK(j["chi_const"]["exact"] == "1");
  CHECK(j["chi_gen_upper"]["exact"] == "3/2");
  CHECK(j["chi_low_star"]["exact"] == "3/2");
}

TEST_CASE("figure1 CSV") {
  const Outcome o = run({"figure1", "--nmin", "2", "--nmax", "4"});
  REQUIRE(o.code == 0);
  CHECK(o.out.rfind("N,ratio_unconstrained,ratio_lower,ratio_upper\n", 0) == 0);
  CHECK(o.out.find("\n3,2,,\n") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(run({"dof", "--dims", "2,3,4,1", "--bogus"}).code == cli::kUsage);
  CHECK(run({"nonsense"}).code == cli::kUsage);
  CHECK(run({"genericity", "--dims", "2,3,4,1"}).code == cli::kUsage);  // --seed is required
  const Outcome bad = run({"pilots", "--dims", "2,9,4,1"});
  CHECK(bad.code == cli::kInvalidRegime);
  CHECK_FALSE(bad.err.empty());
  CHECK(run({"dof", "--dims", "0,1,1,1"}).code == cli::kInvalidRegime);
}

TEST_CASE("repeated runs are byte-identical") {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"genericity", "--dims", "2,3,4,1", "--seed", "3", "--trials", "20"},
        std::vector<std::string>{"identify", "--dims", "2,3,4,1", "--seed", "3", "--trials", "10"},
        std::vector<std::string>{"mc-logdet", "--dims", "2,3,4,1", "--seed", "3", "--samples", "200"},
        std::vector<std::string>{"jacobian-witness", "--dims", "2,3,4,1", "--json"}}) {
    const Outcome a = run(args), b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("sweep keeps invalid cells as records") {
  const Outcome o = run({"genericity", "--dims", "2,2:9,4,1", "--seed", "1:2", "--trials", "5"});
  REQUIRE(o.code == 0);
  const auto rows = lines_of(o.out);
  long ok = 0, invalid = 0;
  for (const json& r : rows) (r["status"] == "ok" ? ok : invalid)++;
  // receive cap for (2,.,4,1) is 3
  CHECK(ok == 2 * 2);
  CHECK(invalid == 6 * 2);
}

TEST_CASE("csv sweep") {
  const Outcome o = run({"dof", "--dims", "1:2,2,4,1", "--format", "csv"});
  REQUIRE(o.code == 0);
  std::istringstream in(o.out);
  std::string header;
  std::getline(in, header);
  CHECK(header.find("dims.T") != std::string::npos);
  int rows = 0;
  for (std::string line; std::getline(in, line);) rows += !line.empty();
  CHECK(rows == 2);
}

TEST_CASE("pilots text and json") {
  const Outcome t = run({"pilots", "--dims", "4,5,6,1"});
  REQUIRE(t.code == 0);
  CHECK(t.out.find("ok   i:pilot-total") != std::string::npos);
  CHECK(t.out.find("FAIL") == std::string::npos);
  const Outcome j = run({"pilots", "--dims", "4,5,6,1", "--json"});
  REQUIRE(j.code == 0);
  const json p = json::parse(j.out);
  CHECK(p["assignment"]["theta_R"] == 14);
  CHECK(p["properties"].size() == 11);
}

TEST_CASE("witness exact determinant") {
  const Outcome o = run({"jacobian-witness", "--dims", "2,3,4,1", "--exact"});
  CHECK(o.code == 0);
  CHECK(o.out.find("nonsingular") != std::string::npos);
}

TEST_CASE("verify-all") {
  const Outcome o = run({"verify-all", "--nmax", "6"});
  INFO(o.out);
  CHECK(o.code == 0);
  CHECK(o.out.find("FAIL") == std::string::npos);
}

}
