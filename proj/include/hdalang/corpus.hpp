#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hdalang/category.hpp"
#include "hdalang/fo.hpp"
#include "hdalang/io.hpp"
#include "hdalang/order.hpp"
#include "hdalang/presentation.hpp"
#include "hdalang/samples.hpp"

namespace hdalang {

/// A named, self-checking example: `compute` produces a report whose fields
/// must equal `expected`. Expected values come from hand-built reference
/// objects, never from the computation under test.
struct CorpusEntry {
  std::string name;
  std::string description;
  std::function<std::vector<std::pair<std::string, Json>>()> inputs;  ///< file name -> document
  std::function<Json()> compute;
  std::function<Json()> expected;
};

struct CorpusResult {
  std::string name;
  bool passed = false;
  Json actual;
  Json expected;
  std::vector<std::string> diff;  ///< one line per mismatching field
};

namespace detail {

inline Json canonical_forms(const std::vector<Pomset>& ps) {
  std::set<std::string> forms;
  for (const auto& p : ps) forms.insert(canonical_form(p));
  return Json(std::vector<std::string>(forms.begin(), forms.end()));
}

inline bool interfaces_empty(const Pomset& p) { return p.sources().empty() && p.targets().empty(); }

inline bool is_word(const Pomset& p) {
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (!p.comparable(i, j)) return false;
  return true;
}

/// k blocks of [a||a], each entirely before the next.
inline Pomset parallel_blocks(std::size_t k) {
  STSequence w{{}, {}};
  for (std::size_t i = 0; i < k; ++i) {
    w.letters.push_back(STLetter::starter({"a", "a"}, 0b11));
    w.letters.push_back(STLetter::terminator({"a", "a"}, 0b11));
  }
  return glue_st(w);
}

inline Json counter_witness_json(const Hda& h, const CounterFreeReport& r) {
  Json out = Json::array();
  for (const auto& w : r.witnesses) {
    Json cells = Json::array();
    for (auto x : w.oscillating) cells.push_back(h.id(x));
    out.push_back({{"object", to_json(w.object)},
                   {"word", to_string(w.word)},
                   {"sequence", to_json(w.word)},
                   {"index", w.index},
                   {"period", w.period},
                   {"cells", cells}});
  }
  return out;
}

inline std::size_t max_period(const CounterFreeReport& r) {
  std::size_t p = 0;
  for (const auto& w : r.witnesses) p = std::max(p, w.period);
  return p;
}

inline std::vector<CorpusEntry> build_corpus() {
  std::vector<CorpusEntry> c;

  c.push_back({"fig1", "gluing two pomsets along a shared interface",
               [] {
                 return std::vector<std::pair<std::string, Json>>{{"f1-left.json", to_json(samples::gluing_left())},
                                                                  {"f1-right.json", to_json(samples::gluing_right())}};
               },
               [] {
                 const Pomset r = glue(samples::gluing_left(), samples::gluing_right());
                 return Json{{"result", canonical_form(r)}, {"events", r.size()}};
               },
               [] {
                 const Pomset r = samples::gluing_result();
                 return Json{{"result", canonical_form(r)}, {"events", r.size()}};
               }});

  c.push_back({"fig2", "membership of a path pomset in a three-square HDA",
               [] {
                 return std::vector<std::pair<std::string, Json>>{{"fig2-hda.json", to_json(samples::grid_hda_document())},
                                                                  {"fig2-pomset.json", to_json(samples::path_pomset())}};
               },
               [] {
                 const Hda h = samples::grid_hda();
                 const Path path = samples::grid_path(h);
                 return Json{{"accepts", accepts(h, samples::path_pomset())},
                             {"path_pomset_matches", is_isomorphic(ev_path(h, path), samples::path_pomset())},
                             {"path_accepting", is_accepting_path(h, path)}};
               },
               [] { return Json{{"accepts", true}, {"path_pomset_matches", true}, {"path_accepting", true}}; }});

  c.push_back({"fig3", "sparse decomposition of the path pomset into six letters",
               [] {
                 return std::vector<std::pair<std::string, Json>>{{"fig3-pomset.json", to_json(samples::path_pomset())}};
               },
               [] {
                 const STSequence w = st_decompose_sparse(samples::path_pomset());
                 return Json{{"sequence", to_string(w)},
                             {"letters", w.letters.size()},
                             {"sparse", w.is_sparse()},
                             {"glue_inverts", is_isomorphic(glue_st(w), samples::path_pomset())}};
               },
               [] {
                 const STSequence w = samples::path_decomposition();
                 return Json{{"sequence", to_string(w)}, {"letters", 6}, {"sparse", true}, {"glue_inverts", true}};
               }});

  c.push_back({"fig5a", "a counter-free presentation of down([a||b]) b* + a",
               [] {
                 return std::vector<std::pair<std::string, Json>>{
                     {"fig5a.json", to_json(samples::counter_free_presentation())}};
               },
               [] {
                 const Presentation p = samples::counter_free_presentation();
                 return Json{{"elements", p.size()},
                             {"valid", validate_presentation(p).ok},
                             {"counter_free_module", is_counter_free_module(p).counter_free}};
               },
               [] { return Json{{"elements", 13}, {"valid", true}, {"counter_free_module", true}}; }});

  c.push_back({"fig5-counter", "the HDA built from that presentation has a counter",
               [] {
                 return std::vector<std::pair<std::string, Json>>{{"fig5b.json", to_json(samples::counter_hda_document())}};
               },
               [] {
                 const Hda h = presentation_to_hda(coherent_closure(samples::counter_free_presentation()));
                 const auto r = is_counter_free_hda(h);
                 return Json{{"cells", h.size()},
                             {"isomorphic_to_reference", find_isomorphism(h, samples::counter_hda()).has_value()},
                             {"counter_free", r.counter_free},
                             {"period", max_period(r)}};
               },
               [] {
                 const Hda ref = samples::counter_hda();
                 return Json{{"cells", ref.size()}, {"isomorphic_to_reference", true}, {"counter_free", false}, {"period", 2}};
               }});

  c.push_back({"fig5-merged", "the suffix presentation merges the accepting cells and removes the counter",
               [] {
                 return std::vector<std::pair<std::string, Json>>{
                     {"fig5-merged.json", to_json(samples::merged_hda_document())}};
               },
               [] {
                 const Hda h = presentation_to_hda(coherent_closure(samples::counter_free_presentation()));
                 const Presentation s = restrict_to_source(suffix_presentation(h), {});
                 const Hda m = presentation_to_hda(coherent_closure(s));
                 return Json{{"accepting_elements", s.accepting.size()},
                             {"cells", m.size()},
                             {"counter_free", is_counter_free_hda(m).counter_free},
                             {"isomorphic_to_reference", find_isomorphism(m, samples::merged_hda()).has_value()}};
               },
               [] {
                 const Hda ref = samples::merged_hda();
                 return Json{{"accepting_elements", 1},
                             {"cells", ref.size()},
                             {"counter_free", true},
                             {"isomorphic_to_reference", true}};
               }});

  c.push_back({"prop31", "forall x. a(x) & exists! y. x || y: pairs of parallel a's, down-closure meets words evenly",
               [] { return std::vector<std::pair<std::string, Json>>{}; },
               [] {
                 const auto lang = fo_language(builtin("prop31"), 6, 2);
                 std::vector<Pomset> plain;
                 for (const auto& p : lang)
                   if (interfaces_empty(p)) plain.push_back(p);
                 std::set<std::size_t> lengths;
                 for (const auto& [form, p] : downward_closure(lang))
                   if (interfaces_empty(p) && is_word(p)) lengths.insert(p.size());
                 return Json{{"empty_interface_members", canonical_forms(plain)},
                             {"word_lengths", Json(std::vector<std::size_t>(lengths.begin(), lengths.end()))}};
               },
               [] {
                 std::vector<Pomset> blocks;
                 for (std::size_t k = 0; k <= 3; ++k) blocks.push_back(parallel_blocks(k));
                 return Json{{"empty_interface_members", canonical_forms(blocks)},
                             {"word_lengths", Json(std::vector<std::size_t>{0, 2, 4, 6})}};
               }});

  c.push_back({"p2n", "the alternating family P_2n is first-order definable",
               [] { return std::vector<std::pair<std::string, Json>>{{"p4.json", to_json(samples::p2n(2))}}; },
               [] { return Json{{"members", canonical_forms(fo_language(builtin("p2n_family"), 8, 2))}}; },
               [] {
                 std::vector<Pomset> family;
                 for (std::size_t n = 0; n <= 4; ++n) family.push_back(samples::p2n(n));
                 return Json{{"members", canonical_forms(family)}};
               }});

  c.push_back({"a-star", "the words a* have an aperiodic syntactic category",
               [] { return std::vector<std::pair<std::string, Json>>{{"a-star.json", to_json(samples::a_star_document())}}; },
               [] {
                 const auto tc = transition_category(validate_hda(samples::a_star_document()));
                 const auto r = is_aperiodic_category(syntactic_category(tc).category);
                 return Json{{"aperiodic", r.aperiodic}, {"period", r.aperiodic ? 1 : r.witness_period}};
               },
               [] { return Json{{"aperiodic", true}, {"period", 1}}; }});

  c.push_back({"aa-star", "the even-length words (aa)* have a period-2 syntactic endomorphism",
               [] {
                 return std::vector<std::pair<std::string, Json>>{{"aa-star.json", to_json(samples::aa_star_document())}};
               },
               [] {
                 const auto tc = transition_category(validate_hda(samples::aa_star_document()));
                 const auto r = is_aperiodic_category(syntactic_category(tc).category);
                 return Json{{"aperiodic", r.aperiodic}, {"period", r.aperiodic ? 1 : r.witness_period}};
               },
               [] { return Json{{"aperiodic", false}, {"period", 2}}; }});

  return c;
}

}  // namespace detail

inline const std::vector<CorpusEntry>& corpus() {
  static const std::vector<CorpusEntry> entries = detail::build_corpus();
  return entries;
}

inline const CorpusEntry& corpus_entry(const std::string& name) {
  for (const auto& e : corpus())
    if (e.name == name) return e;
  throw Error(ErrorCode::UnknownName, "no corpus entry named " + name);
}

inline CorpusResult run_corpus_entry(const CorpusEntry& e) {
  CorpusResult r;
  r.name = e.name;
  r.actual = e.compute();
  r.expected = e.expected();
  for (const auto& [key, want] : r.expected.items()) {
    auto it = r.actual.find(key);
    if (it == r.actual.end())
      r.diff.push_back(key + ": missing, expected " + want.dump());
    else if (*it != want)
      r.diff.push_back(key + ": got " + it->dump() + ", expected " + want.dump());
  }
  r.passed = r.diff.empty();
  return r;
}

inline CorpusResult run_corpus_entry(const std::string& name) { return run_corpus_entry(corpus_entry(name)); }

}  // namespace hdalang
