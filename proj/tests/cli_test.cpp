#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hdalang/cli.hpp"
#include "hdalang/samples.hpp"

using namespace hdalang;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
  Json json() const { return Json::parse(out); }
};

Outcome call(std::vector<std::string> args) {
  args.insert(args.begin(), "hdalang");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string corpus_file(const std::string& name) { return std::string(HDALANG_SOURCE_DIR) + "/data/corpus/" + name; }

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("hdalang-cli-" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "-" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

  fs::path dir_;
};

STSequence power(const STSequence& w, std::size_t n) {
  STSequence out{w.start, {}};
  for (std::size_t i = 0; i < n; ++i) out.letters.insert(out.letters.end(), w.letters.begin(), w.letters.end());
  return out;
}

}  // namespace

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(call({"pomset", "validate", corpus_file("fig3-pomset.json")}).code, cli::kTrue);
  EXPECT_EQ(call({"hda", "accepts", corpus_file("fig2-hda.json"), corpus_file("fig2-pomset.json")}).code, cli::kTrue);
  EXPECT_EQ(call({"hda", "accepts", corpus_file("fig2-hda.json"), corpus_file("p4.json")}).code, cli::kFalse);
  EXPECT_EQ(call({"nonsense"}).code, cli::kFailure);
  EXPECT_EQ(call({}).code, cli::kFailure);
  EXPECT_EQ(call({"pomset", "validate", (dir_ / "missing.json").string()}).code, cli::kFailure);
  EXPECT_EQ(call({"--help"}).code, cli::kTrue);
  EXPECT_EQ(call({"hda", "--help"}).code, cli::kTrue);
}

TEST_F(CliTest, BadDocumentsFail) {
  const Outcome broken = call({"pomset", "validate", write("broken.json", "{\"events\": [")});
  EXPECT_EQ(broken.code, cli::kFailure);
  EXPECT_FALSE(broken.err.empty());
  const std::string cyclic = write("cyclic.json", R"({"events":[{"id":"x","label":"a"},{"id":"y","label":"a"}],
      "precedence":[["x","y"],["y","x"]]})");
  const Outcome r = call({"pomset", "validate", cyclic});
  EXPECT_EQ(r.code, cli::kFailure);
  EXPECT_NE(r.err.find("PrecedenceCyclic"), std::string::npos) << r.err;
  EXPECT_EQ(call({"hda", "validate", corpus_file("p4.json")}).code, cli::kFailure);
}

TEST_F(CliTest, GlueMatchesLibrary) {
  const Outcome r = call({"pomset", "glue", corpus_file("f1-left.json"), corpus_file("f1-right.json")});
  ASSERT_EQ(r.code, cli::kTrue) << r.err;
  EXPECT_EQ(r.json()["canonical"], canonical_form(samples::gluing_result()));
  const Pomset back = pomset_from_json(r.json()["document"]);
  EXPECT_EQ(canonical_form(back), canonical_form(samples::gluing_result()));
  EXPECT_EQ(call({"pomset", "glue", corpus_file("f1-right.json"), corpus_file("f1-left.json")}).code, cli::kFailure);
}

TEST_F(CliTest, DecomposeAndDimension) {
  const Outcome r = call({"pomset", "decompose", corpus_file("fig3-pomset.json")});
  ASSERT_EQ(r.code, cli::kTrue);
  EXPECT_EQ(sequence_from_json(r.json()["sequence"]), samples::path_decomposition());
  EXPECT_EQ(call({"pomset", "dim", corpus_file("fig3-pomset.json")}).json()["dimension"], 2);
}

TEST_F(CliTest, Subsumption) {
  const std::string par = write("par.json", to_json(make_pomset({"a", "b"}, {}, {{0, 1}})).dump());
  const std::string seq = write("seq.json", to_json(make_pomset({"a", "b"}, {{0, 1}}, {})).dump());
  EXPECT_EQ(call({"pomset", "subsumes", seq, par}).code, cli::kTrue);
  EXPECT_EQ(call({"pomset", "subsumes", par, seq}).code, cli::kFalse);
  const Json down = call({"pomset", "downclose", par}).json();
  EXPECT_EQ(down["count"], 3);
}

TEST_F(CliTest, CounterWitnessesReplay) {
  const Outcome r = call({"hda", "counterfree", corpus_file("fig5b.json")});
  ASSERT_EQ(r.code, cli::kFalse) << r.err;
  const Hda h = samples::counter_hda();
  const Json witnesses = r.json()["witnesses"];
  ASSERT_FALSE(witnesses.empty());
  for (const auto& w : witnesses) {
    const STSequence word = sequence_from_json(w["sequence"]);
    EXPECT_EQ(word.start, conclist_from_json(w["object"]));
    EXPECT_EQ(word.finish(), word.start);
    const std::size_t index = w["index"], period = w["period"];
    ASSERT_GE(period, 2u);
    for (const auto& id : w["cells"]) {
      const std::size_t x = *h.find(id.get<std::string>());
      auto at = [&](std::size_t n) {
        CellSet s = run(h, {x}, power(word, n));
        std::sort(s.begin(), s.end());
        return s;
      };
      EXPECT_EQ(at(index), at(index + period)) << id;
      bool moves = false;
      for (std::size_t n = index; n < index + period; ++n) moves = moves || at(n) != at(n + 1);
      EXPECT_TRUE(moves) << id;
    }
  }
  EXPECT_EQ(call({"hda", "counterfree", corpus_file("fig5-merged.json")}).code, cli::kTrue);
}

TEST_F(CliTest, StPipeline) {
  const Outcome a = call({"st", "from-hda", corpus_file("fig5b.json")});
  ASSERT_EQ(a.code, cli::kTrue);
  const std::string st = write("st.json", a.out);
  EXPECT_EQ(call({"st", "accepts", st, corpus_file("fig2-pomset.json")}).code,
            accepts(samples::counter_hda(), samples::path_pomset()) ? cli::kTrue : cli::kFalse);
  const Outcome cf = call({"st", "counterfree", st});
  ASSERT_EQ(cf.code, cli::kFalse) << cf.out;
  const STSequence w = sequence_from_json(cf.json()["witness"]["sequence"]);
  EXPECT_EQ(w.finish(), w.start);
  const Json monoid = call({"st", "monoid", write("aa.json", call({"st", "from-hda", corpus_file("aa-star.json")}).out)}).json();
  EXPECT_TRUE(monoid["laws_hold"].get<bool>());
  EXPECT_FALSE(monoid["aperiodic"].get<bool>());
  EXPECT_EQ(monoid["witness"]["period"], 2);
}

TEST_F(CliTest, PresentationPipeline) {
  EXPECT_EQ(call({"alg", "counterfree-module", corpus_file("fig5a.json")}).code, cli::kTrue);
  EXPECT_EQ(call({"alg", "to-hda", corpus_file("fig5a.json")}).code, cli::kFailure);
  const Outcome closed = call({"alg", "coherent", corpus_file("fig5a.json")});
  ASSERT_EQ(closed.code, cli::kTrue);
  EXPECT_TRUE(closed.json().contains("lower"));
  EXPECT_EQ(call({"alg", "to-hda", write("closed.json", closed.out)}).out,
            call({"alg", "to-hda", "--close", corpus_file("fig5a.json")}).out);
  const Outcome counter = call({"alg", "to-hda", "--close", corpus_file("fig5a.json")});
  ASSERT_EQ(counter.code, cli::kTrue) << counter.err;
  EXPECT_TRUE(find_isomorphism(hda_from_json(counter.json()), samples::counter_hda()).has_value());

  const Outcome suffix = call({"alg", "suffix-pres", "--empty-source", write("counter.json", counter.out)});
  ASSERT_EQ(suffix.code, cli::kTrue) << suffix.err;
  const std::string pres = write("suffix.json", suffix.out);
  EXPECT_EQ(call({"alg", "counterfree-module", pres}).code, cli::kTrue);
  const Outcome merged = call({"alg", "to-hda", "--close", pres});
  ASSERT_EQ(merged.code, cli::kTrue) << merged.err;
  const std::string hda = write("merged.json", merged.out);
  EXPECT_EQ(call({"hda", "counterfree", hda}).code, cli::kTrue);
  EXPECT_TRUE(find_isomorphism(hda_from_json(merged.json()), samples::merged_hda()).has_value());
  EXPECT_EQ(call({"alg", "validate", "--max-letters", "3", pres}).code, cli::kTrue);
}

TEST_F(CliTest, Aperiodicity) {
  EXPECT_EQ(call({"alg", "aperiodic", corpus_file("a-star.json")}).code, cli::kTrue);
  const Outcome r = call({"alg", "aperiodic", corpus_file("aa-star.json")});
  EXPECT_EQ(r.code, cli::kFalse);
  EXPECT_EQ(r.json()["result"], false);
  EXPECT_EQ(call({"alg", "transition-cat", corpus_file("aa-star.json")}).json()["law_violations"], 0);
}

TEST_F(CliTest, FirstOrderCheck) {
  EXPECT_EQ(call({"fo", "check", corpus_file("p4.json"), "--builtin", "p2n_family"}).code, cli::kTrue);
  EXPECT_EQ(call({"fo", "check", corpus_file("p4.json"), "--builtin", "complement_p2n"}).code, cli::kFalse);
  EXPECT_EQ(call({"fo", "check", corpus_file("p4.json"), "forall x. a(x)"}).code, cli::kTrue);
  EXPECT_EQ(call({"fo", "check", corpus_file("p4.json"), "exists x. b(x)"}).code, cli::kFalse);
  const std::string file = write("f.fo", "exists x. exists y. x < y");
  EXPECT_EQ(call({"fo", "check", corpus_file("p4.json"), "--formula-file", file}).code, cli::kTrue);
  const Outcome bad = call({"fo", "check", corpus_file("p4.json"), "forall x. (a(x)"});
  EXPECT_EQ(bad.code, cli::kFailure);
  EXPECT_NE(bad.err.find("position"), std::string::npos) << bad.err;
  EXPECT_EQ(call({"fo", "check", corpus_file("p4.json"), "--builtin", "nope"}).code, cli::kFailure);
  EXPECT_EQ(call({"fo", "check", corpus_file("p4.json"), "a(x)"}).code, cli::kFailure);
}

TEST_F(CliTest, FirstOrderLanguage) {
  const Json r = call({"--max-events", "4", "fo", "language", "--builtin", "p2n_family"}).json();
  EXPECT_EQ(r["max_events"], 4);
  EXPECT_EQ(r["count"], 3);
  const Json ab = call({"--max-events", "2", "fo", "language", "--alphabet", "a,b", "forall x. !S(x) & !T(x)"}).json();
  std::size_t plain = 0;
  for (const auto& p : enumerate_pomsets({"a", "b"}, 2, 2)) plain += p.sources().empty() && p.targets().empty();
  EXPECT_EQ(ab["count"], plain);
  EXPECT_EQ(call({"--max-events", "13", "fo", "language", "true"}).code, cli::kFailure);
}

TEST_F(CliTest, Formats) {
  const Outcome dot = call({"--format", "dot", "pomset", "validate", corpus_file("fig3-pomset.json")});
  EXPECT_EQ(dot.out, export_dot(samples::path_pomset()));
  EXPECT_EQ(call({"export", "dot", corpus_file("fig5b.json")}).out, export_dot(samples::counter_hda()));
  EXPECT_EQ(call({"export", "dot", corpus_file("fig5a.json")}).out, export_dot(samples::counter_free_presentation()));
  const Outcome text = call({"--format", "text", "pomset", "dim", corpus_file("fig3-pomset.json")});
  EXPECT_EQ(text.out, "dimension: 2\n");
  EXPECT_EQ(call({"--format", "dot", "pomset", "dim", corpus_file("fig3-pomset.json")}).code, cli::kFailure);
  EXPECT_EQ(call({"--format", "yaml", "pomset", "dim", corpus_file("fig3-pomset.json")}).code, cli::kFailure);
}

TEST_F(CliTest, SampledLanguageIsReproducible) {
  const std::vector<std::string> args{"--max-events", "4", "--seed", "11", "hda", "language", "--sample", "3",
                                      corpus_file("fig2-hda.json")};
  const Outcome a = call(args), b = call(args);
  ASSERT_EQ(a.code, cli::kTrue) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.json()["members"].size(), 3u);
  const Json full = call({"--max-events", "4", "hda", "language", corpus_file("fig2-hda.json")}).json();
  EXPECT_EQ(full["count"], a.json()["count"]);
  for (const auto& m : a.json()["members"])
    EXPECT_NE(std::find(full["members"].begin(), full["members"].end(), m), full["members"].end());
}

TEST_F(CliTest, EventBoundFromEnvironment) {
  ::setenv("IPOMSET_MAX_EVENTS", "3", 1);
  const Json r = call({"hda", "language", corpus_file("a-star.json")}).json();
  ::unsetenv("IPOMSET_MAX_EVENTS");
  EXPECT_EQ(r["max_events"], 3);
  EXPECT_EQ(call({"hda", "language", corpus_file("a-star.json")}).json()["max_events"], 7);
}

TEST_F(CliTest, Reachability) {
  const Outcome r = call({"hda", "reach", corpus_file("fig2-hda.json"), samples::grid_hda().id(0), corpus_file("fig2-pomset.json")});
  ASSERT_EQ(r.code, cli::kTrue) << r.err;
  EXPECT_TRUE(r.json()["cells"].is_array());
  EXPECT_EQ(call({"hda", "reach", corpus_file("fig2-hda.json"), "no-such-cell", corpus_file("fig2-pomset.json")}).code,
            cli::kFailure);
}

TEST_F(CliTest, Corpus) {
  const Json list = call({"corpus", "list"}).json();
  EXPECT_EQ(list["entries"].size(), corpus().size());
  const Outcome all = call({"corpus", "run"});
  EXPECT_EQ(all.code, cli::kTrue) << all.out;
  EXPECT_EQ(call({"corpus", "run", "fig1", "a-star"}).json()["entries"].size(), 2u);
  EXPECT_EQ(call({"corpus", "run", "fig9"}).code, cli::kFailure);
  EXPECT_EQ(call({"corpus", "show", "fig1"}).json()["inputs"].size(), 2u);
  const Outcome dump = call({"corpus", "dump", (dir_ / "out").string()});
  ASSERT_EQ(dump.code, cli::kTrue);
  for (const auto& f : dump.json()["written"]) {
    const fs::path p = f.get<std::string>();
    EXPECT_EQ(read_json_file(p.string()), read_json_file(corpus_file(p.filename().string())));
  }
}
