#include <gtest/gtest.h>

#include <random>

#include "hdalang/enumerate.hpp"
#include "hdalang/pomset.hpp"
#include "hdalang/samples.hpp"
#include "hdalang/st.hpp"
#include "oracles.hpp"

using namespace hdalang;

namespace {

ErrorCode error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::InvalidDocument;
}

}  // namespace

TEST(Validate, GluingResultIsValid) {
  Pomset r = samples::gluing_result();
  EXPECT_EQ(r.size(), 4u);
  auto b = *r.find("b");
  auto d = *r.find("d");
  EXPECT_TRUE(r.is_source(b));
  EXPECT_TRUE(r.is_target(d));
}

TEST(Validate, EmptyPomsetIsIdentityOnEmptyConclist) {
  Pomset e = validate_ipomset(RawPomset{});
  EXPECT_TRUE(e.empty());
  EXPECT_EQ(canonical_form(e), canonical_form(identity_pomset({})));
}

TEST(Validate, TwoPlusTwoIsRejected) {
  auto code = error_of([] {
    make_pomset({"a", "b", "c", "d"}, {{0, 1}, {2, 3}}, {{0, 2}, {0, 3}, {1, 2}, {1, 3}});
  });
  EXPECT_EQ(code, ErrorCode::NotIntervalOrder);
}

TEST(Validate, ErrorKinds) {
  EXPECT_EQ(error_of([] { make_pomset({"a", "b"}, {}, {}); }), ErrorCode::EventOrderIncomplete);
  EXPECT_EQ(error_of([] { make_pomset({"a", "b", "c"}, {}, {{0, 1}, {1, 2}, {2, 0}}); }),
            ErrorCode::EventOrderCyclic);
  EXPECT_EQ(error_of([] { make_pomset({"a", "b"}, {{0, 1}, {1, 0}}, {}); }), ErrorCode::PrecedenceCyclic);
  EXPECT_EQ(error_of([] { make_pomset({"a", "b"}, {{0, 1}}, {}, {1}, {}); }), ErrorCode::InterfaceNotExtremal);
  EXPECT_EQ(error_of([] { make_pomset({"a", "b"}, {{0, 1}}, {}, {}, {0}); }), ErrorCode::InterfaceNotExtremal);
  EXPECT_EQ(error_of([] { validate_ipomset(RawPomset{{{"x", "a"}, {"x", "b"}}, {}, {}, {}, {}}); }),
            ErrorCode::DuplicateEvent);
  EXPECT_EQ(error_of([] { validate_ipomset(RawPomset{{{"x", "a"}}, {{"x", "y"}}, {}, {}, {}}); }),
            ErrorCode::UnknownEvent);
}

TEST(Validate, PrecedenceIsClosedAndEventOrderRestricted) {
  Pomset p = make_pomset({"a", "b", "c"}, {{0, 1}, {1, 2}}, {{0, 2}});
  EXPECT_TRUE(p.precedes(0, 2));
  EXPECT_FALSE(p.ordered(0, 2));
}

TEST(Validate, TwoPlusTwoFreeMatchesIntervalRepresentation) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 4000; ++trial) {
    const std::size_t n = 1 + rng() % 6;
    Relation lt(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (rng() % 3 == 0) lt.set(i, j);
    lt.transitive_closure();
    PomsetParts parts(n);
    for (std::size_t i = 0; i < n; ++i) parts.labels[i] = "a";
    parts.precedence = lt;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) parts.event_order.set(i, j);
    bool accepted = true;
    try {
      validate_ipomset(parts);
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::NotIntervalOrder);
      accepted = false;
    }
    EXPECT_EQ(accepted, oracle::interval_representation(lt).has_value());
  }
}

TEST(Glue, GluingExample) {
  Pomset r = glue(samples::gluing_left(), samples::gluing_right());
  EXPECT_TRUE(oracle::isomorphic(r, samples::gluing_result()));
  EXPECT_EQ(canonical_form(r), canonical_form(samples::gluing_result()));
}

TEST(Glue, IdentityLaws) {
  for (const auto& p : enumerate_pomsets({"a", "b"}, 3, 2)) {
    EXPECT_EQ(canonical_form(glue(p, identity_pomset(p.target_conclist()))), canonical_form(p));
    EXPECT_EQ(canonical_form(glue(identity_pomset(p.source_conclist()), p)), canonical_form(p));
  }
}

TEST(Glue, StarterThenTerminatorGivesConcurrentPair) {
  Pomset r = glue(starter_pomset({"a", "b"}, 0b01), terminator_pomset({"a", "b"}, 0b10));
  Pomset expected = make_pomset({"a", "b"}, {}, {{0, 1}}, {1}, {0});
  EXPECT_TRUE(oracle::isomorphic(r, expected));
}

TEST(Glue, InterfaceMismatch) {
  EXPECT_EQ(error_of([] { glue(starter_pomset({"a"}, 0), starter_pomset({"b"}, 0)); }),
            ErrorCode::InterfaceMismatch);
  EXPECT_EQ(error_of([] { glue(identity_pomset({"a", "b"}), identity_pomset({"b", "a"})); }),
            ErrorCode::InterfaceMismatch);
}

TEST(Glue, AssociativeOnSmallPomsets) {
  auto all = enumerate_pomsets({"a", "b"}, 2, 2);
  std::size_t checked = 0;
  for (const auto& p : all)
    for (const auto& q : all) {
      if (p.target_conclist() != q.source_conclist()) continue;
      Pomset pq = glue(p, q);
      for (const auto& r : all) {
        if (q.target_conclist() != r.source_conclist()) continue;
        EXPECT_EQ(canonical_form(glue(pq, r)), canonical_form(glue(p, glue(q, r))));
        ++checked;
      }
    }
  EXPECT_GT(checked, 1000u);
}

TEST(Glue, AssociativeOnRandomLargerTriples) {
  auto all = enumerate_pomsets({"a", "b"}, 4, 2);
  std::mt19937 rng(11);
  std::size_t checked = 0;
  while (checked < 3000) {
    const auto& p = all[rng() % all.size()];
    const auto& q = all[rng() % all.size()];
    if (p.target_conclist() != q.source_conclist()) continue;
    const auto& r = all[rng() % all.size()];
    if (q.target_conclist() != r.source_conclist()) continue;
    EXPECT_EQ(canonical_form(glue(glue(p, q), r)), canonical_form(glue(p, glue(q, r))));
    ++checked;
  }
}

TEST(Remove, Basics) {
  Pomset p = samples::gluing_result();
  EXPECT_EQ(canonical_form(remove_target_events(p, 0)), canonical_form(p));
  Pomset both = make_pomset({"a", "b"}, {}, {{0, 1}}, {}, {0, 1});
  Pomset only_b = remove_target_events(both, 0b01);
  EXPECT_EQ(canonical_form(only_b), canonical_form(make_pomset({"b"}, {}, {}, {}, {0})));
  EXPECT_EQ(error_of([&] { remove_target_events(both, 0b100); }), ErrorCode::NotInTargetInterface);
  EXPECT_EQ(error_of([&] { remove_events(p, {*p.find("a")}); }), ErrorCode::NotInTargetInterface);
}

namespace {

struct ExchangeCounts {
  std::size_t starter = 0;
  std::size_t terminator = 0;
};

// Checks both exchange laws for every P in the universe, every starter adding
// one event and every terminator leaving T_P, and every admissible A.
ExchangeCounts check_exchange_laws(const std::vector<Label>& sigma, std::size_t max_events, std::size_t max_dim) {
  ExchangeCounts counts;
  for_each_pomset(sigma, max_events, max_dim, std::nullopt, [&](const STSequence& w) {
    Pomset p = glue_st(w);
    const Conclist t = p.target_conclist();
    // (P * starter{U}{B}) - A = (P - (A\B)) * starter{U-A}{B\A}
    for (const auto& s : starters_from(t, sigma, max_dim, 1)) {
      const Conclist& u = s.carrier;
      const Subset b = s.subset;
      Pomset ps = glue(p, s.to_pomset());
      for (Subset a = 0; a <= full_subset(u.size()); ++a) {
        Pomset lhs = remove_target_events(ps, a);
        Pomset rhs = glue(remove_target_events(p, compress(a & ~b, b, u.size())),
                          starter_pomset(remove_positions(u, a), compress(b & ~a, a, u.size())));
        EXPECT_EQ(canonical_form(lhs), canonical_form(rhs)) << to_string(w) << " " << to_string(s) << " A=" << a;
        ++counts.starter;
      }
    }
    // (P * terminator{U}{B}) - A = (P - A) * terminator{U-A}{B}, A inside U-B
    const Conclist& u = t;
    for (Subset b = 1; b <= full_subset(u.size()); ++b) {
      Pomset pt = glue(p, terminator_pomset(u, b));
      const std::size_t rest = u.size() - static_cast<std::size_t>(cardinality(b));
      for (Subset a = 0; a <= full_subset(rest); ++a) {
        const Subset lifted = expand(a, b, u.size());
        Pomset lhs = remove_target_events(pt, a);
        Pomset rhs = glue(remove_target_events(p, lifted),
                          terminator_pomset(remove_positions(u, lifted), compress(b, lifted, u.size())));
        EXPECT_EQ(canonical_form(lhs), canonical_form(rhs)) << to_string(w) << " B=" << b << " A=" << a;
        ++counts.terminator;
      }
    }
  });
  return counts;
}

}  // namespace

TEST(Remove, ExchangeLawsTwoLabels) {
  auto counts = check_exchange_laws({"a", "b"}, 4, 3);
  EXPECT_GT(counts.starter, 10000u);
  EXPECT_GT(counts.terminator, 10000u);
}

TEST(Remove, ExchangeLawsOneLabelFiveEvents) {
  auto counts = check_exchange_laws({"a"}, 5, 3);
  EXPECT_GT(counts.starter, 10000u);
  EXPECT_GT(counts.terminator, 10000u);
}

TEST(Dimension, Examples) {
  Pomset word = make_pomset({"a", "b", "a"}, {{0, 1}, {1, 2}}, {});
  EXPECT_EQ(dimension(word), 1u);
  EXPECT_EQ(dimension(samples::path_pomset()), 2u);
  EXPECT_EQ(dimension(validate_ipomset(RawPomset{})), 0u);
  EXPECT_EQ(dimension(identity_pomset({"a", "a", "b"})), 3u);
}

TEST(Dimension, MatchesMaximumAntichain) {
  for (const auto& p : enumerate_pomsets({"a", "b"}, 4, 4)) ASSERT_EQ(dimension(p), oracle::max_antichain(p));
  std::mt19937 rng(13);
  std::size_t checked = 0;
  for_each_pomset({"a", "b"}, 6, 6, Conclist{}, [&](const STSequence& w) {
    if (rng() % 200 != 0) return;
    Pomset p = glue_st(w);
    ASSERT_EQ(dimension(p), oracle::max_antichain(p)) << to_string(w);
    ++checked;
  });
  EXPECT_GT(checked, 1000u);
}
