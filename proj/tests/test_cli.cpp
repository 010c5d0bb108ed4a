#include <doctest.h>

#include <sys/wait.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "dmaug/conll.hpp"
#include "support.hpp"
#include "test_server.hpp"

namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("dmaug_cli_" + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

int run(const std::string& args, const std::string& log) {
  const std::string cmd = std::string(DMAUG_CLI) + " " + args + " >" + log + " 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<nlohmann::json> jsonl(const std::string& path) {
  std::vector<nlohmann::json> out;
  std::ifstream in(path);
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) out.push_back(nlohmann::json::parse(line));
  return out;
}

void write(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

}  // namespace

TEST_CASE("cli: usage errors exit 1") {
  TempDir t;
  CHECK(run("", t / "log") == 1);
  CHECK(run("no-such-command", t / "log") == 1);
  CHECK(run("generate-artificial", t / "log") == 1);
  CHECK(run("--help", t / "log") == 0);
  CHECK(slurp(t / "log").find("generate-artificial") != std::string::npos);
}

TEST_CASE("cli: artificial generation and corpus tools") {
  TempDir t;
  const std::string cores = support::data("demo_cores.tsv");
  REQUIRE(run("generate-artificial --cores " + cores + " --out " + (t / "all.jsonl") + " --conll " +
                  (t / "all.conll"),
              t / "log") == 0);
  CHECK(jsonl(t / "all.jsonl").size() == 600);
  REQUIRE(run("generate-artificial --cores " + cores + " --stance original --out " + (t / "orig.jsonl"), t / "log") ==
          0);
  CHECK(jsonl(t / "orig.jsonl").size() == 300);
  // same seed, same bytes
  REQUIRE(run("generate-artificial --cores " + cores + " --out " + (t / "again.jsonl"), t / "log") == 0);
  CHECK(slurp(t / "again.jsonl") == slurp(t / "all.jsonl"));
  CHECK(run("generate-artificial --cores " + cores + " --stance sideways", t / "log") == 1);
  CHECK(run("generate-artificial --cores " + (t / "missing.tsv"), t / "log") == 2);

  const auto corpus = dmaug::read_conll(fs::path(t / "all.conll"));
  CHECK(!corpus.empty());

  REQUIRE(run("extract-dms --schema artificial --input " + (t / "all.conll") + " --out " + (t / "dms.jsonl"),
              t / "log") == 0);
  const auto dms = jsonl(t / "dms.jsonl");
  CHECK(dms.size() == corpus.size());
  for (const auto& j : dms) CHECK(j["dms"].size() == j["adus"].size());

  REQUIRE(run("remove-dms --schema artificial --input " + (t / "all.conll") + " --out " + (t / "bare.conll"),
              t / "log") == 0);
  CHECK(dmaug::read_conll(fs::path(t / "bare.conll")).size() == corpus.size());
}

TEST_CASE("cli: augment, evaluate and agreement") {
  TempDir t;
  write(t / "in.conll", "");
  {
    std::vector<dmaug::LabeledSequence> c;
    const auto p = support::four_adu_paragraph();
    c.push_back({p.tokens, p.labels()});
    const auto q = support::annotate(
        "A great number of plants and animals died out because they were unable to fit into the new environment.",
        {{"A great number of plants and animals died out", "Claim"},
         {"they were unable to fit into the new environment", "Premise"}});
    c.push_back({q.tokens, q.labels()});
    dmaug::write_conll(fs::path(t / "in.conll"), c);
  }
  const std::string out = t / "run";
  REQUIRE(run("augment --input " + (t / "in.conll") + " --input-mode removed_dms --augmenter rule --out " + out,
              t / "log") == 0);
  const auto insts = jsonl(out + "/instances.jsonl");
  REQUIRE(insts.size() == 2);
  CHECK(dmaug::read_conll(fs::path(out + "/x_m.conll")).size() == 2);

  REQUIRE(run("eval-dm --instances " + out + "/instances.jsonl --out " + (t / "dm.json") + " --lexicon " +
                  support::data("arg_markers.tsv") + " --lexicon " + support::data("disc_relations.tsv") +
                  " --confusion",
              t / "log") == 0);
  const auto dm = jsonl(t / "dm.json");
  REQUIRE(dm.size() == 1);
  CHECK(dm[0]["coverage"]["coverage"] == 1.0);
  CHECK(dm[0]["confusion"].size() == 2);

  // the gold labels as tagger output give a perfect score
  REQUIRE(run("eval-downstream --instances " + out + "/instances.jsonl --pred " + out + "/x_m.conll --pred " + out +
                  "/x_m.conll --out " + (t / "down.jsonl"),
              t / "log") == 0);
  const auto down = jsonl(t / "down.jsonl");
  REQUIRE(down.size() == 3);
  CHECK(down[0]["report"]["span_f1"] == 1.0);
  CHECK(down[2]["summary"]["runs"] == 2);

  write(t / "short.conll", "x\tO\n");
  CHECK(run("eval-downstream --instances " + out + "/instances.jsonl --pred " + (t / "short.conll"), t / "log") == 2);
  CHECK(run("augment --input " + (t / "in.conll") + " --augmenter remote --out " + out, t / "log") == 1);
  CHECK(run("augment --input " + (t / "in.conll") + " --projection sideways --out " + out, t / "log") == 1);

  write(t / "a.txt", "1\n2\n3\n4\n");
  write(t / "b.txt", "2\n4\n5\n4\n");
  REQUIRE(run("agreement --metric pearson --a " + (t / "a.txt") + " --b " + (t / "b.txt"), t / "agr") == 0);
  CHECK(nlohmann::json::parse(slurp(t / "agr"))["pearson"].get<double>() ==
        doctest::Approx(0.7181848464596079).epsilon(1e-12));
  write(t / "c.txt", "1\nx\n3\n4\n");
  CHECK(run("agreement --metric pearson --a " + (t / "a.txt") + " --b " + (t / "c.txt"), t / "log") == 2);
  CHECK(run("agreement --metric cosine --a " + (t / "a.txt") + " --b " + (t / "b.txt"), t / "log") == 1);
}

TEST_CASE("cli: remote augmentation") {
  TempDir t;
  support::TestServer server;
  std::vector<dmaug::LabeledSequence> c;
  const auto p = support::four_adu_paragraph();
  c.push_back({p.tokens, p.labels()});
  dmaug::write_conll(fs::path(t / "in.conll"), c);
  CHECK(run("augment --input " + (t / "in.conll") + " --augmenter remote --endpoint " + server.url("/prepend") +
                " --out " + (t / "ok"),
            t / "log") == 0);
  const auto insts = jsonl(t / "ok/instances.jsonl");
  REQUIRE(insts.size() == 1);
  CHECK(run("augment --input " + (t / "in.conll") + " --augmenter remote --timeout 2 --endpoint " +
                server.url("/status400") + " --out " + (t / "bad"),
            t / "log") == 3);
  CHECK(run("augment --input " + (t / "in.conll") + " --augmenter remote --endpoint 'not a url' --out " + (t / "x"),
            t / "log") == 1);
}
