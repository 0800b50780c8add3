#pragma once

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "hdalang/category.hpp"
#include "hdalang/corpus.hpp"
#include "hdalang/dot.hpp"
#include "hdalang/enumerate.hpp"
#include "hdalang/fo.hpp"
#include "hdalang/io.hpp"
#include "hdalang/order.hpp"
#include "hdalang/presentation.hpp"
#include "hdalang/st_automaton.hpp"

namespace hdalang::cli {

/// Exit status: decisions map true to kTrue and false to kFalse.
inline constexpr int kTrue = 0;
inline constexpr int kFalse = 1;
inline constexpr int kFailure = 2;

struct GlobalOptions {
  std::size_t max_events = default_event_bound();
  std::size_t max_dim = 2;
  std::string format = "json";
  unsigned seed = 0;
};

namespace detail {

inline void text_of(const Json& j, const std::string& indent, std::ostream& out) {
  for (const auto& [key, v] : j.items()) {
    if (v.is_array() && std::all_of(v.begin(), v.end(), [](const Json& x) { return x.is_primitive(); })) {
      out << indent << key << ":";
      if (v.empty()) out << " (none)";
      out << "\n";
      for (const auto& x : v) out << indent << "  - " << (x.is_string() ? x.get<std::string>() : x.dump()) << "\n";
    } else if (v.is_object()) {
      out << indent << key << ":\n";
      text_of(v, indent + "  ", out);
    } else if (v.is_array()) {
      out << indent << key << ":\n";
      for (const auto& x : v) {
        if (x.is_object()) {
          out << indent << "  -\n";
          text_of(x, indent + "    ", out);
        } else {
          out << indent << "  - " << x.dump() << "\n";
        }
      }
    } else {
      out << indent << key << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    }
  }
}

class Runner {
 public:
  Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int run(const std::vector<std::string>& args) {
    CLI::App app{"Pomset languages, higher-dimensional automata and their algebra", "hdalang"};
    app.require_subcommand(1);
    app.add_option("--max-events", opts_.max_events, "bound on enumerated events (default from IPOMSET_MAX_EVENTS)");
    app.add_option("--max-dim", opts_.max_dim, "bound on dimension for enumerations");
    app.add_option("--format", opts_.format, "output format")->check(CLI::IsMember({"json", "dot", "text"}));
    app.add_option("--seed", opts_.seed, "seed for sampled output");
    app.fallthrough();

    add_pomset(app);
    add_hda(app);
    add_st(app);
    add_alg(app);
    add_fo(app);
    add_corpus(app);
    add_export(app);

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
      app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
      return app.exit(e, out_, err_);
    } catch (const CLI::CallForAllHelp& e) {
      return app.exit(e, out_, err_);
    } catch (const CLI::ParseError& e) {
      app.exit(e, out_, err_);
      return kFailure;
    }

    try {
      for (const auto& [sub, action] : leaves_)
        if (sub->parsed()) return action();
      err_ << "no command given\n";
      return kFailure;
    } catch (const Error& e) {
      err_ << "error: " << e.what() << "\n";
      return kFailure;
    } catch (const std::exception& e) {
      err_ << "error: " << e.what() << "\n";
      return kFailure;
    }
  }

 private:
  std::ostream& out_;
  std::ostream& err_;
  GlobalOptions opts_;
  std::vector<std::pair<CLI::App*, std::function<int()>>> leaves_;
  // storage for positional arguments, kept alive for the parser
  std::vector<std::unique_ptr<std::string>> strings_;
  std::vector<std::unique_ptr<std::vector<std::string>>> lists_;

  std::string& slot() { return *strings_.emplace_back(std::make_unique<std::string>()); }
  std::vector<std::string>& list_slot() { return *lists_.emplace_back(std::make_unique<std::vector<std::string>>()); }

  CLI::App* leaf(CLI::App* parent, const std::string& name, const std::string& help, std::function<int()> action) {
    CLI::App* sub = parent->add_subcommand(name, help);
    leaves_.emplace_back(sub, std::move(action));
    return sub;
  }

  std::string& file(CLI::App* sub, const std::string& name, const std::string& help) {
    std::string& s = slot();
    sub->add_option(name, s, help)->required()->check(CLI::ExistingFile);
    return s;
  }

  void emit(const Json& report, const std::optional<std::string>& dot = std::nullopt) {
    if (opts_.format == "dot") {
      if (!dot) throw Error(ErrorCode::UnknownDocumentKind, "this command has no DOT rendering");
      out_ << *dot;
    } else if (opts_.format == "text") {
      text_of(report, "", out_);
    } else {
      out_ << report.dump(2) << "\n";
    }
  }

  int decide(Json report, bool result) {
    Json out{{"result", result}};
    for (const auto& [k, v] : report.items()) out[k] = v;
    emit(out);
    return result ? kTrue : kFalse;
  }

  static Pomset load_pomset(const std::string& path) { return pomset_from_json(read_json_file(path)); }
  static Hda load_hda(const std::string& path) { return hda_from_json(read_json_file(path)); }
  static StAutomaton load_st(const std::string& path) { return st_automaton_from_json(read_json_file(path)); }
  static Presentation load_presentation(const std::string& path) {
    return presentation_from_json(read_json_file(path));
  }

  static Json forms(const PomsetSet& set) {
    Json arr = Json::array();
    for (const auto& [form, p] : set) arr.push_back(form);
    return arr;
  }

  // -------------------------------------------------------------------------

  void add_pomset(CLI::App& app) {
    CLI::App* g = app.add_subcommand("pomset", "pomset documents");
    g->require_subcommand(1);
    {
      CLI::App* s = leaf(g, "validate", "check a pomset document and print its canonical form", {});
      std::string& f = file(s, "pomset", "pomset document");
      leaves_.back().second = [this, &f] {
        const Pomset p = load_pomset(f);
        emit({{"valid", true}, {"canonical", canonical_form(p)}, {"document", to_json(p)}}, export_dot(p));
        return kTrue;
      };
    }
    {
      CLI::App* s = leaf(g, "glue", "glue two pomsets along matching interfaces", {});
      std::string& a = file(s, "left", "left pomset");
      std::string& b = file(s, "right", "right pomset");
      leaves_.back().second = [this, &a, &b] {
        const Pomset r = glue(load_pomset(a), load_pomset(b));
        emit({{"canonical", canonical_form(r)}, {"document", to_json(r)}}, export_dot(r));
        return kTrue;
      };
    }
    {
      CLI::App* s = leaf(g, "decompose", "sparse sequence of starters and terminators", {});
      std::string& f = file(s, "pomset", "pomset document");
      leaves_.back().second = [this, &f] {
        const STSequence w = st_decompose_sparse(load_pomset(f));
        emit({{"letters", w.letters.size()}, {"sequence", to_json(w)}});
        return kTrue;
      };
    }
    {
      CLI::App* s = leaf(g, "subsumes", "whether the first pomset is subsumed by the second", {});
      std::string& a = file(s, "p", "less concurrent pomset");
      std::string& b = file(s, "q", "more concurrent pomset");
      leaves_.back().second = [this, &a, &b] { return decide({}, is_subsumed(load_pomset(a), load_pomset(b))); };
    }
    {
      CLI::App* s = leaf(g, "downclose", "every pomset subsumed by the given one", {});
      std::string& f = file(s, "pomset", "pomset document");
      leaves_.back().second = [this, &f] {
        const PomsetSet down = downward_closure(load_pomset(f));
        emit({{"count", down.size()}, {"members", forms(down)}});
        return kTrue;
      };
    }
    {
      CLI::App* s = leaf(g, "dim", "largest number of pairwise concurrent events", {});
      std::string& f = file(s, "pomset", "pomset document");
      leaves_.back().second = [this, &f] {
        emit({{"dimension", dimension(load_pomset(f))}});
        return kTrue;
      };
    }
  }

  void add_hda(CLI::App& app) {
    CLI::App* g = app.add_subcommand("hda", "higher-dimensional automata");
    g->require_subcommand(1);
    {
      CLI::App* s = leaf(g, "validate", "check faces and precubical identities", {});
      std::string& f = file(s, "hda", "HDA document");
      leaves_.back().second = [this, &f] {
        const Hda h = load_hda(f);
        Json objects = Json::array();
        for (const auto& u : h.objects()) objects.push_back(to_string(u));
        emit({{"valid", true}, {"cells", h.size()}, {"objects", objects}}, export_dot(h));
        return kTrue;
      };
    }
    {
      CLI::App* s = leaf(g, "accepts", "whether the HDA accepts the pomset", {});
      std::string& f = file(s, "hda", "HDA document");
      std::string& p = file(s, "pomset", "pomset document");
      leaves_.back().second = [this, &f, &p] { return decide({}, accepts(load_hda(f), load_pomset(p))); };
    }
    {
      CLI::App* s = leaf(g, "language", "accepted pomsets up to --max-events", {});
      std::string& f = file(s, "hda", "HDA document");
      auto& sample = *strings_.emplace_back(std::make_unique<std::string>());
      s->add_option("--sample", sample, "print only this many members, drawn with --seed");
      leaves_.back().second = [this, &f, &sample] {
        const PomsetSet lang = enumerate_language(load_hda(f), opts_.max_events);
        Json members = forms(lang);
        if (!sample.empty()) {
          const std::size_t k = std::stoul(sample);
          std::vector<Json> picked;
          std::mt19937 rng(opts_.seed);
          std::sample(members.begin(), members.end(), std::back_inserter(picked), k, rng);
          members = Json(picked);
        }
        emit({{"max_events", opts_.max_events}, {"count", lang.size()}, {"members", members}});
        return kTrue;
      };
    }
    {
      CLI::App* s = leaf(g, "counterfree", "look for a pomset whose powers cycle on cells", {});
      std::string& f = file(s, "hda", "HDA document");
      leaves_.back().second = [this, &f] {
        const Hda h = load_hda(f);
        const auto r = is_counter_free_hda(h);
        return decide({{"stabilization", r.stabilization},
                       {"endomorphisms", r.endomorphisms},
                       {"witnesses", hdalang::detail::counter_witness_json(h, r)}},
                      r.counter_free);
      };
    }
    {
      CLI::App* s = leaf(g, "reach", "cells reached from a cell by paths carrying the pomset", {});
      std::string& f = file(s, "hda", "HDA document");
      std::string& cell = slot();
      s->add_option("cell", cell, "start cell id")->required();
      std::string& p = file(s, "pomset", "pomset document");
      leaves_.back().second = [this, &f, &cell, &p] {
        const Hda h = load_hda(f);
        auto x = h.find(cell);
        if (!x) throw Error(ErrorCode::InvalidDocument, "no cell named " + cell);
        Json cells = Json::array();
        for (auto y : reach_set(h, *x, load_pomset(p))) cells.push_back(h.id(y));
        emit({{"cells", cells}});
        return kTrue;
      };
    }
  }

  void add_st(CLI::App& app) {
    CLI::App* g = app.add_subcommand("st", "automata over starters and terminators");
    g->require_subcommand(1);
    {
      CLI::App* s = leaf(g, "from-hda", "the automaton whose states are the cells", {});
      std::string& f = file(s, "hda", "HDA document");
      leaves_.back().second = [this, &f] {
        const StAutomaton a = hda_to_st_automaton(load_hda(f));
        emit(to_json(a), export_dot(a));
        return kTrue;
      };
    }
    {
      CLI::App* s = leaf(g, "accepts", "whether the automaton accepts the sparse sequence of a pomset", {});
      std::string& f = file(s, "automaton", "ST-automaton document");
      std::string& p = file(s, "pomset", "pomset document");
      leaves_.back().second = [this, &f, &p] {
        const STSequence w = st_decompose_sparse(load_pomset(p));
        return decide({{"sequence", to_string(w)}}, st_accepts(load_st(f), w));
      };
    }
    {
      CLI::App* s = leaf(g, "monoid", "transition monoid of the determinized automaton", {});
      std::string& f = file(s, "automaton", "ST-automaton document");
      leaves_.back().second = [this, &f] {
        const Determinized d = determinize_reachable(load_st(f));
        const TransitionMonoid m = transition_monoid(d.automaton);
        const auto r = is_aperiodic_monoid(m.monoid);
        Json report{{"states", d.automaton.size()},
                    {"size", m.monoid.size()},
                    {"laws_hold", check_monoid_laws(m.monoid)},
                    {"aperiodic", r.aperiodic},
                    {"stabilization", r.stabilization}};
        if (r.witness) {
          std::string word;
          for (const auto& l : m.words[*r.witness].letters) word += (word.empty() ? "" : " ") + to_string(l);
          report["witness"] = {{"word", word}, {"index", r.witness_index}, {"period", r.witness_period}};
        }
        emit(report);
        return kTrue;
      };
    }
    {
      CLI::App* s = leaf(g, "counterfree", "whether every word relation has eventually constant powers", {});
      std::string& f = file(s, "automaton", "ST-automaton document");
      leaves_.back().second = [this, &f] {
        const auto r = is_counter_free_st_automaton(load_st(f));
        Json report{{"semigroup_size", r.semigroup_size}};
        if (r.witness) report["witness"] = {{"word", to_string(*r.witness)}, {"sequence", to_json(*r.witness)}, {"period", r.period}};
        return decide(report, r.counter_free);
      };
    }
  }

  static Json aperiodicity_json(const CategoryAperiodicity& r, const std::optional<STSequence>& word) {
    Json j{{"aperiodic", r.aperiodic}, {"stabilization", r.stabilization}};
    if (r.witness) {
      j["witness"] = {{"index", r.witness_index}, {"period", r.witness_period}};
      if (word) j["witness"]["word"] = to_string(*word);
    }
    return j;
  }

  void add_alg(CLI::App& app) {
    CLI::App* g = app.add_subcommand("alg", "categories and presentations");
    g->require_subcommand(1);
    {
      CLI::App* s = leaf(g, "transition-cat", "finite category of cell relations induced by pomsets", {});
      std::string& f = file(s, "hda", "HDA document");
      leaves_.back().second = [this, &f] {
        const TransitionCategory tc = transition_category(load_hda(f));
        Json objects = Json::array();
        for (const auto& u : tc.category.objects) objects.push_back(to_string(u));
        const auto r = is_aperiodic_category(tc.category);
        std::optional<STSequence> w;
        if (r.witness) w = tc.words[*r.witness];
        emit({{"objects", objects},
              {"morphisms", tc.category.size()},
              {"accepting", std::count(tc.accepting.begin(), tc.accepting.end(), true)},
              {"law_violations", check_category_laws(tc.category).size()},
              {"aperiodicity", aperiodicity_json(r, w)}});
        return kTrue;
      };
    }
    {
      CLI::App* s = leaf(g, "syntactic", "quotient of the transition category by the language congruence", {});
      std::string& f = file(s, "hda", "HDA document");
      leaves_.back().second = [this, &f] {
        const TransitionCategory tc = transition_category(load_hda(f));
        const SyntacticCategory sc = syntactic_category(tc);
        const auto r = is_aperiodic_category(sc.category);
        emit({{"morphisms", sc.category.size()},
              {"accepting", std::count(sc.accepting.begin(), sc.accepting.end(), true)},
              {"law_violations", check_category_laws(sc.category).size()},
              {"aperiodicity", aperiodicity_json(r, witness_word(tc, sc, r))}});
        return kTrue;
      };
    }
    {
      CLI::App* s = leaf(g, "aperiodic", "whether the language has an aperiodic syntactic category", {});
      std::string& f = file(s, "hda", "HDA document");
      leaves_.back().second = [this, &f] {
        const TransitionCategory tc = transition_category(load_hda(f));
        const SyntacticCategory sc = syntactic_category(tc);
        const auto r = is_aperiodic_category(sc.category);
        Json report = aperiodicity_json(r, witness_word(tc, sc, r));
        report.erase("aperiodic");
        report["transition_category_aperiodic"] = is_aperiodic_category(tc.category).aperiodic;
        return decide(report, r.aperiodic);
      };
    }
    {
      CLI::App* s = leaf(g, "counterfree-module", "whether no letter word cycles elements with period above one", {});
      std::string& f = file(s, "presentation", "presentation document");
      leaves_.back().second = [this, &f] {
        const Presentation p = load_presentation(f);
        const auto r = is_counter_free_module(p);
        Json report{{"stabilization", r.stabilization}, {"endomorphisms", r.endomorphisms}};
        if (r.witness)
          report["witness"] = {{"object", to_string(r.witness->object)},
                               {"word", to_string(r.witness->word)},
                               {"sequence", to_json(r.witness->word)},
                               {"index", r.witness->index},
                               {"period", r.witness->period},
                               {"element", p.name(r.witness->element)}};
        return decide(report, r.counter_free);
      };
    }
    {
      CLI::App* s = leaf(g, "suffix-pres", "presentation by suffix languages of the cells", {});
      std::string& f = file(s, "hda", "HDA document");
      bool& empty_source = *new_flag();
      s->add_flag("--empty-source", empty_source, "keep only elements with empty source");
      leaves_.back().second = [this, &f, &empty_source] {
        Presentation p = suffix_presentation(load_hda(f));
        if (empty_source) p = restrict_to_source(p, {});
        emit(to_json(p), export_dot(p));
        return kTrue;
      };
    }
    {
      CLI::App* s = leaf(g, "coherent", "add lower-face data by tupling elements", {});
      std::string& f = file(s, "presentation", "presentation document");
      leaves_.back().second = [this, &f] {
        const Presentation p = coherent_closure(load_presentation(f));
        emit(to_json(p), export_dot(p));
        return kTrue;
      };
    }
    {
      CLI::App* s = leaf(g, "to-hda", "HDA whose cells are the elements of a coherent presentation", {});
      std::string& f = file(s, "presentation", "presentation document");
      bool& close = *new_flag();
      s->add_flag("--close", close, "apply the coherent closure first");
      leaves_.back().second = [this, &f, &close] {
        Presentation p = load_presentation(f);
        if (close) p = coherent_closure(p);
        const Hda h = presentation_to_hda(p);
        emit(to_json(h), export_dot(h));
        return kTrue;
      };
    }
    {
      CLI::App* s = leaf(g, "validate", "typing, identity and consistency laws on bounded words", {});
      std::string& f = file(s, "presentation", "presentation document");
      std::size_t& letters = *sizes_.emplace_back(std::make_unique<std::size_t>(4));
      s->add_option("--max-letters", letters, "length bound on compared letter words");
      leaves_.back().second = [this, &f, &letters] {
        const auto r = validate_presentation(load_presentation(f), letters);
        return decide({{"word_bound", r.word_bound}, {"words_checked", r.words_checked}, {"violations", r.violations}},
                      r.ok);
      };
    }
  }

  static std::optional<STSequence> witness_word(const TransitionCategory& tc, const SyntacticCategory& sc,
                                                const CategoryAperiodicity& r) {
    if (!r.witness) return std::nullopt;
    for (std::size_t m = 0; m < sc.projection.size(); ++m)
      if (sc.projection[m] == *r.witness) return tc.words[m];
    return std::nullopt;
  }

  std::vector<std::unique_ptr<bool>> flags_;
  std::vector<std::unique_ptr<std::size_t>> sizes_;
  bool* new_flag() { return flags_.emplace_back(std::make_unique<bool>(false)).get(); }

  struct FormulaArgs {
    std::string text;
    std::string builtin;
    std::string file;
  };
  std::vector<std::unique_ptr<FormulaArgs>> formulas_;

  FormulaArgs& formula_options(CLI::App* s) {
    FormulaArgs& a = *formulas_.emplace_back(std::make_unique<FormulaArgs>());
    s->add_option("formula", a.text, "formula text");
    s->add_option("--builtin", a.builtin, "named formula: prop31, p2n_family, complement_p2n");
    s->add_option("--formula-file", a.file, "file holding the formula")->check(CLI::ExistingFile);
    return a;
  }

  static Formula load_formula(const FormulaArgs& a) {
    const int given = !a.text.empty() + !a.builtin.empty() + !a.file.empty();
    if (given != 1) throw Error(ErrorCode::InvalidDocument, "give exactly one of a formula, --builtin or --formula-file");
    if (!a.builtin.empty()) return builtin(a.builtin);
    if (!a.text.empty()) return parse_formula(a.text);
    std::ifstream in(a.file);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_formula(buf.str());
  }

  void add_fo(CLI::App& app) {
    CLI::App* g = app.add_subcommand("fo", "first-order formulas over pomsets");
    g->require_subcommand(1);
    {
      CLI::App* s = leaf(g, "check", "whether the pomset satisfies a closed formula", {});
      std::string& p = file(s, "pomset", "pomset document");
      FormulaArgs& fa = formula_options(s);
      leaves_.back().second = [this, &p, &fa] {
        const Formula f = load_formula(fa);
        return decide({{"formula", to_string(f)}}, satisfies(load_pomset(p), f));
      };
    }
    {
      CLI::App* s = leaf(g, "language", "models up to --max-events and --max-dim", {});
      FormulaArgs& fa = formula_options(s);
      auto& alphabet = list_slot();
      s->add_option("--alphabet", alphabet, "labels to enumerate over (default: the formula's)")->delimiter(',')->allow_extra_args(false);
      leaves_.back().second = [this, &fa, &alphabet] {
        const Formula f = load_formula(fa);
        const auto lang = fo_language(f, opts_.max_events, opts_.max_dim, alphabet);
        Json members = Json::array();
        std::set<std::string> sorted;
        for (const auto& p : lang) sorted.insert(canonical_form(p));
        for (const auto& m : sorted) members.push_back(m);
        emit({{"max_events", opts_.max_events}, {"max_dim", opts_.max_dim}, {"count", lang.size()}, {"members", members}});
        return kTrue;
      };
    }
  }

  void add_corpus(CLI::App& app) {
    CLI::App* g = app.add_subcommand("corpus", "built-in reference examples");
    g->require_subcommand(1);
    leaf(g, "list", "names and descriptions", [this] {
      Json entries = Json::array();
      for (const auto& e : corpus()) entries.push_back({{"name", e.name}, {"description", e.description}});
      emit({{"entries", entries}});
      return kTrue;
    });
    {
      CLI::App* s = leaf(g, "run", "run entries (all when none named) and compare with expectations", {});
      auto& names = list_slot();
      s->add_option("names", names, "entry names");
      leaves_.back().second = [this, &names] {
        std::vector<const CorpusEntry*> chosen;
        if (names.empty())
          for (const auto& e : corpus()) chosen.push_back(&e);
        for (const auto& n : names) chosen.push_back(&corpus_entry(n));
        Json results = Json::array();
        std::vector<std::string> diffs;
        for (const auto* e : chosen) {
          const CorpusResult r = run_corpus_entry(*e);
          results.push_back({{"name", r.name}, {"passed", r.passed}, {"actual", r.actual}, {"diff", r.diff}});
          for (const auto& d : r.diff) diffs.push_back(r.name + ": " + d);
        }
        emit({{"entries", results}});
        if (diffs.empty()) return kTrue;
        std::string message;
        for (const auto& d : diffs) message += "\n  " + d;
        throw Error(ErrorCode::CorpusMismatch, "expectations not met:" + message);
      };
    }
    {
      CLI::App* s = leaf(g, "show", "input documents of an entry", {});
      std::string& name = slot();
      s->add_option("name", name, "entry name")->required();
      leaves_.back().second = [this, &name] {
        Json docs = Json::object();
        for (const auto& [file_name, doc] : corpus_entry(name).inputs()) docs[file_name] = doc;
        emit({{"name", name}, {"inputs", docs}});
        return kTrue;
      };
    }
    {
      CLI::App* s = leaf(g, "dump", "write every entry's input documents into a directory", {});
      std::string& dir = slot();
      s->add_option("directory", dir, "output directory")->required();
      leaves_.back().second = [this, &dir] {
        std::filesystem::create_directories(dir);
        Json written = Json::array();
        for (const auto& e : corpus())
          for (const auto& [file_name, doc] : e.inputs()) {
            const auto path = std::filesystem::path(dir) / file_name;
            std::ofstream(path) << doc.dump(2) << "\n";
            written.push_back(path.string());
          }
        emit({{"written", written}});
        return kTrue;
      };
    }
  }

  void add_export(CLI::App& app) {
    CLI::App* g = app.add_subcommand("export", "renderings of documents");
    g->require_subcommand(1);
    CLI::App* s = leaf(g, "dot", "Graphviz DOT for any document", {});
    std::string& f = file(s, "document", "pomset, HDA, ST-automaton or presentation document");
    leaves_.back().second = [this, &f] {
      out_ << export_dot(read_json_file(f));
      return kTrue;
    };
  }
};

}  // namespace detail

/// Parses `args` (program name first), runs the command and returns its exit
/// status: 0 for success or a true decision, 1 for a false decision, 2 for errors.
inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  return detail::Runner(out, err).run(args);
}

}  // namespace hdalang::cli
