#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "isoprofile/cache.hpp"
#include "isoprofile/cli.hpp"
#include "isoprofile/errors.hpp"
#include "isoprofile/io.hpp"
#include "isoprofile/parse.hpp"
#include "support.hpp"

namespace isoprofile {
namespace {

using nlohmann::json;
using testing_support::data_path;
using testing_support::load_complex;

class TempDir {
 public:
  TempDir() {
    path_ = std::filesystem::temp_directory_path() /
            ("isoprofile-test-" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
             "-" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

TEST(Load, PresentationForms) {
  const auto text = load_skeleton(json::parse(R"({"dim": 2, "presentation": "<a, b | a b a^-1 b^-1>",
                                                  "oracle": {"kind": "abelian"}})"));
  const auto object = load_skeleton_file(data_path("z2.json"));
  EXPECT_EQ(text.spec, object.spec);
  EXPECT_EQ(fingerprint(text.spec, *text.oracle), fingerprint(object.spec, *object.oracle));
  // Default oracle: bfs when there are relators, free otherwise.
  EXPECT_EQ(load_skeleton(json::parse(R"({"dim": 2, "presentation": "<a | a^3>"})")).oracle->kind(),
            OracleKind::kBoundedBfs);
  EXPECT_EQ(load_skeleton(json::parse(R"({"dim": 2, "presentation": "<a>"})")).oracle->kind(),
            OracleKind::kFree);
}

TEST(Load, Errors) {
  EXPECT_THROW(load_skeleton(json::parse(R"({"presentation": "<a>"})")), ParseError);
  EXPECT_THROW(load_skeleton(json::parse(R"({"dim": 1, "presentation": "<a>"})")), InvalidSkeleton);
  EXPECT_THROW(load_skeleton(json::parse(R"({"dim": 2, "presentation": "<a>",
                                             "oracle": {"kind": "magic"}})")),
               ParseError);
  EXPECT_THROW(load_skeleton(json::parse(R"({"dim": 3, "presentation": "<a>"})")), ParseError);
  EXPECT_THROW(load_skeleton(json::parse(R"({"dim": 2, "presentation": "<a>",
      "cells": [{"dim": 2, "id": "r", "boundary": [{"word": "e", "base": "nope", "coeff": 1}]}]})")),
               InvalidSkeleton);
  EXPECT_THROW(load_skeleton(json::parse(R"({"dim": 2, "presentation": {"generators": "a"}})")),
               ParseError);
  EXPECT_THROW(load_skeleton_file(data_path("missing.json")), InputError);
}

TEST(Load, FingerprintTracksContent) {
  const auto a = load_skeleton_file(data_path("z2.json"));
  const auto b = load_skeleton_file(data_path("z2_bfs.json"));
  EXPECT_NE(fingerprint(a.spec, *a.oracle), fingerprint(b.spec, *b.oracle));
  const auto c = load_skeleton_file(data_path("z2_bfs.json"), {5});
  EXPECT_NE(fingerprint(b.spec, *b.oracle), fingerprint(c.spec, *c.oracle));
  EXPECT_EQ(sha256_hex("abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(ChainLiteral, RoundTrip) {
  const auto z2 = load_complex("z2.json");
  const Chain square = z2.base_boundary(2, 0);
  const std::string text = format_chain(square, z2);
  EXPECT_EQ(text, "(e, e_a) - (b, e_a) - (e, e_b) + (a, e_b)");
  EXPECT_EQ(parse_chain(text, z2), square);
  EXPECT_EQ(parse_chain("2*(a b, r0) - (b a, r0)", z2),
            Chain::single({2, 0, parse_word("a b", {"a", "b"})}, 1));
  EXPECT_EQ(parse_chain("-3 (e, r0)", z2), Chain::single({2, 0, Word(2)}, -3));
  EXPECT_TRUE(parse_chain("0", z2, 1).is_zero());
  EXPECT_EQ(format_chain(Chain(1), z2), "0");
  EXPECT_THROW(parse_chain("0", z2), ParseError);
  EXPECT_THROW(parse_chain("(e, zz)", z2), ParseError);
  EXPECT_THROW(parse_chain("(e, e_a) (e, e_b)", z2), ParseError);
  EXPECT_THROW(parse_chain("(e, e_a) + (e, r0)", z2), InputError);
  EXPECT_THROW(parse_chain("(e e_a)", z2), ParseError);
}

TEST(DeltaTable, Parse) {
  const auto t = parse_delta_table("n,value\n1,1\n2, 4\n\n3,9\n");
  EXPECT_EQ(t, (DeltaTable{{1, 1}, {2, 4}, {3, 9}}));
  EXPECT_THROW(parse_delta_table("1,1\nx,2\n"), ParseError);
  EXPECT_THROW(parse_delta_table("1,1\n1,2\n"), InputError);
}

TEST(Table, JsonAndCsv) {
  const auto z2 = load_complex("z2.json");
  ProfileTable table{TableKind::kPsi, "abc", {}, {}};
  const auto psi = psi_table(4, z2);
  for (int n = 1; n <= 4; ++n) table.entries[n] = psi[n];
  const auto j = table_to_json(table, &z2);
  EXPECT_EQ(j["kind"], "Psi");
  EXPECT_EQ(j["values"]["4"], 1);
  EXPECT_EQ(j["budget"]["max_fill_volume"], 64);
  EXPECT_EQ(j["witnesses"]["4"]["witnesses"][0]["volume"], 1);
  EXPECT_EQ(table_to_csv(table), "n,value\n1,0\n2,0\n3,0\n4,1\n");
}

TEST(Cache, StoreLookupAndFingerprintMiss) {
  TempDir dir;
  const auto z2 = load_complex("z2.json");
  const auto entries = psi_table(8, z2);
  const auto path = dir.path() / "cache.json";
  {
    ResultCache cache(path);
    cache.store(ResultCache::key("fp1", TableKind::kPsi, 8, {}), entries[8], &z2);
    cache.save();
  }
  ResultCache cache(path);
  EXPECT_TRUE(cache.warnings().empty());
  const auto hit = cache.lookup(ResultCache::key("fp1", TableKind::kPsi, 8, {}),
                                TableKind::kPsi, 8, &z2);
  ASSERT_TRUE(hit);
  EXPECT_EQ(hit->value, entries[8].value);
  EXPECT_EQ(hit->witnesses, entries[8].witnesses);
  EXPECT_FALSE(cache.lookup(ResultCache::key("fp2", TableKind::kPsi, 8, {}),
                            TableKind::kPsi, 8, &z2));
  EXPECT_FALSE(cache.lookup(ResultCache::key("fp1", TableKind::kPsi, 8, {32, 10, 1}),
                            TableKind::kPsi, 8, &z2));
}

TEST(Cache, TamperedWitnessIsEvicted) {
  TempDir dir;
  const auto z2 = load_complex("z2.json");
  const auto entries = psi_table(8, z2);
  const auto path = dir.path() / "cache.json";
  const auto key = ResultCache::key("fp", TableKind::kPsi, 8, {});
  {
    ResultCache cache(path);
    cache.store(key, entries[8], &z2);
    cache.save();
  }
  json doc = json::parse(slurp(path));
  doc["entries"][key]["witnesses"][0]["filling"] = "(e, r0)";
  std::ofstream(path) << doc.dump();
  ResultCache cache(path);
  EXPECT_FALSE(cache.lookup(key, TableKind::kPsi, 8, &z2));
  EXPECT_EQ(cache.evictions(), 1u);
  EXPECT_EQ(cache.size(), 0u);

  // A value that disagrees with an otherwise valid witness is rejected too.
  ProfileEntry lie = entries[8];
  lie.value = 5;
  cache.store(key, lie, &z2);
  EXPECT_FALSE(cache.lookup(key, TableKind::kPsi, 8, &z2));
}

TEST(Cache, CorruptFileIsRebuilt) {
  TempDir dir;
  const auto path = dir.path() / "cache.json";
  std::ofstream(path) << "{not json";
  ResultCache cache(path);
  ASSERT_EQ(cache.warnings().size(), 1u);
  EXPECT_EQ(cache.size(), 0u);
  cache.save();
  EXPECT_NO_THROW(json::parse(slurp(path)));
}

int run_cli(const std::vector<std::string>& args, std::string& out, std::string& err,
            const std::filesystem::path& cache = {}) {
  JobConfig c;
  c.command = args.at(0);
  for (std::size_t i = 1; i < args.size(); ++i) {
    const auto& a = args[i];
    const auto next = [&] { return args.at(++i); };
    if (a == "--input") c.input = data_path(next());
    else if (a == "--max-n") c.max_n = std::stoi(next());
    else if (a == "--min-n") c.min_n = std::stoi(next());
    else if (a == "--format") c.format = next() == "json" ? OutputFormat::kJson : OutputFormat::kCsv;
    else if (a == "--cycle") c.cycle = next();
    else if (a == "--delta") c.delta = data_path(next());
    else if (a == "--circles") c.circles = std::stoi(next());
    else if (a == "--workers") c.budget.workers = std::stoi(next());
    else if (a == "--max-fill-volume") c.budget.max_fill_volume = std::stoi(next());
    else if (a == "--cycles") c.cycles_only = true;
  }
  if (cache.empty()) {
    c.use_cache = false;
  } else {
    c.cache_path = cache;
  }
  std::ostringstream o, e;
  const int code = run(c, o, e);
  out = o.str();
  err = e.str();
  return code;
}

TEST(Cli, PhiOnLattice) {
  std::string out, err;
  ASSERT_EQ(run_cli({"phi", "--input", "z2.json", "--max-n", "8", "--format", "csv"}, out, err), 0)
      << err;
  EXPECT_NE(out.find("4,1\n"), std::string::npos);
  EXPECT_NE(out.find("8,4\n"), std::string::npos);
}

TEST(Cli, PsiOnFreeGroup) {
  std::string out, err;
  ASSERT_EQ(run_cli({"psi", "--input", "f2.json", "--max-n", "10", "--format", "csv"}, out, err), 0);
  std::istringstream lines(out);
  std::string line;
  std::getline(lines, line);
  int count = 0;
  while (std::getline(lines, line)) {
    EXPECT_EQ(line.substr(line.find(',')), ",0");
    ++count;
  }
  EXPECT_EQ(count, 10);
}

TEST(Cli, ExitCodes) {
  std::string out, err;
  EXPECT_EQ(run_cli({"validate", "--input", "bad.json"}, out, err), 5);
  EXPECT_NE(err.find("invalid-skeleton"), std::string::npos);
  EXPECT_EQ(run_cli({"validate", "--input", "z2.json"}, out, err), 0);
  EXPECT_EQ(run_cli({"phi", "--input", "z2_mod.json"}, out, err), 6);
  EXPECT_EQ(run_cli({"fv", "--input", "z2.json", "--cycle", "(e, e_a) +"}, out, err), 2);
  EXPECT_EQ(run_cli({"fv", "--input", "z2.json", "--cycle", "(e, e_a)"}, out, err), 7);
  EXPECT_EQ(run_cli({"fv", "--input", "z2.json", "--max-fill-volume", "3", "--cycle",
                     "(e, e_a) + (a, e_a) + (a^2, e_b) + (a^2 b, e_b) - (b^2, e_a) - "
                     "(a b^2, e_a) - (e, e_b) - (b, e_b)"},
                    out, err),
            4);
  EXPECT_EQ(run_cli({"psi", "--input", "z2.json", "--max-n", "2", "--min-n", "3"}, out, err), 7);
  EXPECT_EQ(exit_code(ErrorKind::kOracleUndecided), 3);
}

TEST(Cli, FillingVolumeAndBounds) {
  std::string out, err;
  ASSERT_EQ(run_cli({"fv", "--input", "z2.json", "--format", "csv", "--cycle",
                     "(e, e_a) + (a, e_b) - (b, e_a) - (e, e_b)"},
                    out, err),
            0)
      << err;
  EXPECT_EQ(out, "n,value\n4,1\n");
  ASSERT_EQ(run_cli({"chain2-bound", "--delta", "delta_quadratic.csv", "--max-n", "6", "--format",
                     "csv"},
                    out, err),
            0)
      << err;
  EXPECT_NE(out.find("6,36\n"), std::string::npos);
  ASSERT_EQ(run_cli({"disk-bound", "--delta", "delta_quadratic.csv", "--circles", "2",
                     "--max-n", "6", "--format", "csv"},
                    out, err),
            0)
      << err;
  EXPECT_NE(out.find("6,36\n"), std::string::npos);
  EXPECT_EQ(run_cli({"chain2-bound", "--delta", "missing.csv"}, out, err), 7);
}

TEST(Cli, OutputIndependentOfWorkersAndCache) {
  TempDir dir;
  const auto cache = dir.path() / "cache.json";
  std::string serial, parallel, cold, warm, err;
  ASSERT_EQ(run_cli({"psi", "--input", "z2.json", "--max-n", "8", "--format", "json"}, serial, err), 0);
  ASSERT_EQ(run_cli({"psi", "--input", "z2.json", "--max-n", "8", "--format", "json", "--workers",
                     "3"},
                    parallel, err),
            0);
  EXPECT_EQ(serial, parallel);
  ASSERT_EQ(run_cli({"psi", "--input", "z2.json", "--max-n", "8", "--format", "json"}, cold, err,
                    cache),
            0);
  EXPECT_TRUE(std::filesystem::exists(cache));
  ASSERT_EQ(run_cli({"psi", "--input", "z2.json", "--max-n", "8", "--format", "json"}, warm, err,
                    cache),
            0);
  EXPECT_EQ(cold, serial);
  EXPECT_EQ(warm, serial);
  EXPECT_TRUE(err.empty()) << err;
}

TEST(Cli, TamperedCacheIsRecomputed) {
  TempDir dir;
  const auto cache = dir.path() / "cache.json";
  std::string first, second, err;
  ASSERT_EQ(run_cli({"psi", "--input", "z2.json", "--max-n", "6", "--format", "csv"}, first, err,
                    cache),
            0);
  json doc = json::parse(slurp(cache));
  for (auto& [key, entry] : doc["entries"].items()) {
    if (entry.contains("witnesses")) entry["witnesses"][0]["filling"] = "(a, r0)";
  }
  std::ofstream(cache) << doc.dump();
  ASSERT_EQ(run_cli({"psi", "--input", "z2.json", "--max-n", "6", "--format", "csv"}, second, err,
                    cache),
            0);
  EXPECT_EQ(first, second);
  EXPECT_NE(err.find("evicted"), std::string::npos);
}

}  // namespace
}  // namespace isoprofile
