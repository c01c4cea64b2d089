#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "cli.hpp"
#include "theta_idents/catalog.hpp"

using namespace theta_idents;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("theta_idents_cli_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

// A small catalog holding one misprinted entry, its correction and a
// verified neighbour.
std::filesystem::path erratum_catalog() {
  Catalog small;
  for (const char* id : {"MI1-05", "MI1-06", "MI1-06c", "MI1-07"}) small.push_back(*find_identity(builtin_catalog(), id));
  const auto path = scratch("erratum.json");
  save_catalog(small, path);
  return path;
}

std::size_t count_lines(const std::string& text) { return std::count(text.begin(), text.end(), '\n'); }

}  // namespace

TEST(Cli, VerifySingleIdentity) {
  const CliRun r = run({"verify", "--id", "MI1-07", "--m", "0.5", "--p", "3", "--r", "1", "--samples", "8", "--seed", "7"});
  EXPECT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_NE(r.out.find("MI1-07"), std::string::npos);
  EXPECT_NE(r.out.find("ok"), std::string::npos);
}

TEST(Cli, SweepFlagsErratum) {
  const auto path = erratum_catalog();
  const CliRun r = run({"sweep", "--id", "MI1-*", "--m", "0.1,0.5,0.9", "--p", "2..9", "--catalog", path.string()});
  EXPECT_EQ(r.code, cli::kExitFail) << r.err;
  std::istringstream lines(r.out);
  std::string line;
  bool flagged = false;
  while (std::getline(lines, line)) {
    if (line.rfind("MI1-06 ", 0) == 0) {
      flagged = line.find("FAIL") != std::string::npos && line.find("erratum") != std::string::npos;
    } else if (line.rfind("MI1-0", 0) == 0) {
      EXPECT_NE(line.find("ok"), std::string::npos) << line;
    }
  }
  EXPECT_TRUE(flagged) << r.out;

  // the same catalog through the environment variable
  ::setenv("THETA_IDENTS_CATALOG", path.c_str(), 1);
  const CliRun env = run({"list"});
  ::unsetenv("THETA_IDENTS_CATALOG");
  EXPECT_EQ(env.code, cli::kExitOk);
  EXPECT_NE(env.out.find("4 identities"), std::string::npos) << env.out;

  const CliRun clean = run({"sweep", "--id", "MI1-*", "--m", "0.5", "--p", "2..5", "--catalog", path.string(),
                         "--exclude-errata"});
  EXPECT_EQ(clean.code, cli::kExitOk) << clean.out;
}

TEST(Cli, UsageErrors) {
  const CliRun p1 = run({"verify", "--p", "1"});
  EXPECT_EQ(p1.code, cli::kExitUsage);
  EXPECT_NE(p1.err.find("p must be ≥ 2"), std::string::npos) << p1.err;

  EXPECT_EQ(run({"sweep", "--p", "2..65"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"sweep", "--p", "5..3"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"sweep", "--p", "x"}).code, cli::kExitUsage);

  const CliRun tol = run({"verify", "--id", "MI1-07", "--tolerance", "1e-2"});
  EXPECT_EQ(tol.code, cli::kExitUsage);
  EXPECT_NE(tol.err.find("--tolerance"), std::string::npos);

  const CliRun m = run({"sweep", "--m", "0.5,1.0"});
  EXPECT_EQ(m.code, cli::kExitUsage);
  EXPECT_NE(m.err.find("--m"), std::string::npos);

  EXPECT_EQ(run({"verify", "--nodes", "100"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"verify", "--format", "xml"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"verify", "--frobnicate"}).code, cli::kExitUsage);
  EXPECT_EQ(run({}).code, cli::kExitUsage);
  EXPECT_EQ(run({"verify", "--id", "NOPE-*"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"derive", "--map", "sideways"}).code, cli::kExitUsage);
}

TEST(Cli, ConstraintViolation) {
  // gcd(2, 4) = 2
  const CliRun r = run({"verify", "--id", "MI1-07", "--p", "4", "--r", "2"});
  EXPECT_EQ(r.code, cli::kExitUsage);
  EXPECT_NE(r.err.find("ConstraintViolation"), std::string::npos) << r.err;
}

TEST(Cli, BadCatalogNamesPosition) {
  const auto path = scratch("broken.json");
  std::ofstream(path) << "{\n  \"version\": 1,\n  \"identities\": [ oops ]\n}\n";
  const CliRun r = run({"list", "--catalog", path.string()});
  EXPECT_EQ(r.code, cli::kExitUsage);
  EXPECT_NE(r.err.find(path.string()), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("line 3"), std::string::npos) << r.err;

  const auto missing = scratch("missing.json");
  EXPECT_EQ(run({"list", "--catalog", missing.string()}).code, cli::kExitUsage);
}

TEST(Cli, ListCountsBuiltinCatalog) {
  const CliRun human = run({"list"});
  EXPECT_EQ(human.code, cli::kExitOk);
  EXPECT_EQ(count_lines(human.out), builtin_catalog().size() + 1);
  EXPECT_NE(human.out.find(std::to_string(builtin_catalog().size()) + " identities"), std::string::npos);

  const CliRun csv = run({"list", "--format", "csv"});
  EXPECT_EQ(count_lines(csv.out), builtin_catalog().size() + 1);

  const CliRun json = run({"list", "--format", "json"});
  EXPECT_EQ(catalog_from_json(json.out), builtin_catalog());
}

TEST(Cli, ReportsAreByteIdentical) {
  for (const char* format : {"json", "csv"}) {
    const std::vector<std::string> base = {"sweep", "--id", "MI2-4?", "--m", "0.3,0.7", "--p", "2..6",
                                           "--samples", "4", "--seed", "11", "--format", format};
    auto with_threads = [&](const char* n) {
      auto args = base;
      args.insert(args.end(), {"--threads", n});
      return run(args);
    };
    const CliRun one = with_threads("1"), again = with_threads("1"), four = with_threads("4");
    EXPECT_EQ(one.out, again.out) << format;
    EXPECT_EQ(one.out, four.out) << format;
    EXPECT_FALSE(one.out.empty());
  }
}

TEST(Cli, OutputFile) {
  const auto path = scratch("report.json");
  std::filesystem::remove(path);
  const CliRun r = run({"verify", "--id", "MI1-07", "--m", "0.5", "--p", "3", "--format", "json", "--output", path.string()});
  EXPECT_EQ(r.code, cli::kExitOk);
  EXPECT_TRUE(r.out.empty());
  const std::string text = slurp(path);
  EXPECT_NE(text.find("\"MI1-07\""), std::string::npos);
  EXPECT_EQ(text.find("duration"), std::string::npos);
  for (const auto& entry : std::filesystem::directory_iterator(path.parent_path())) {
    EXPECT_EQ(entry.path().filename().string().find(".tmp"), std::string::npos);
  }
}

TEST(Cli, DeriveEmitsCatalog) {
  const CliRun r = run({"derive", "--id", "MI1-1?", "--map", "over-one-minus", "--check", "--m", "0.5", "--p", "2..5",
                     "--samples", "4"});
  EXPECT_EQ(r.code, cli::kExitOk) << r.err;
  const Catalog derived = catalog_from_json(r.out);
  EXPECT_FALSE(derived.empty());
  for (const auto& spec : derived) {
    ASSERT_TRUE(spec.provenance);
    EXPECT_EQ(spec.provenance->map, ModularMapKind::OverOneMinus);
  }
  EXPECT_NE(r.err.find("identities"), std::string::npos);
}

TEST(Cli, Selftest) {
  const CliRun r = run({"selftest"});
  EXPECT_EQ(r.code, cli::kExitOk) << r.out;
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos) << r.out;
  EXPECT_EQ(count_lines(r.out), 4u);
}

TEST(Cli, Help) {
  const CliRun r = run({"--help"});
  EXPECT_EQ(r.code, cli::kExitOk);
  EXPECT_NE(r.out.find("sweep"), std::string::npos);
}
