#include "doctest.h"
#include "helpers.hpp"
#include "lclcx/errors.hpp"

using namespace lclcx;
using namespace lclcx::testing;

TEST_CASE("builtin 3col-to-mis") {
  LclTask t = builtin_task("3col-to-mis");
  CHECK(t.degree == 2);
  CHECK(t.in_labels == std::vector<Label>{"1", "2", "3"});
  CHECK(t.in_stars.size() == 9);  // 3 centers x 3 leaf multisets
  CHECK(t.out_labels == std::vector<Label>{"0", "1"});
  CHECK(t.out_stars.size() == 3);
  CHECK(t.delta.kind == DeltaKind::unconstrained);

  Complex in = build_input_complex(t);
  CHECK(in.vertices().size() == 9);
  CHECK(in.facets().size() == 12);
  CHECK(in.facets() == make_complex(2, c2_facets()).facets());

  Complex out = build_output_complex(t);
  CHECK(out.vertices().size() == 6);
  CHECK(out.facets().size() == 4);
  CHECK(out.facets() == make_complex(2, m2_facets()).facets());
}

TEST_CASE("builtin coloring:k encodes inputless tasks with the unit label") {
  LclTask t = builtin_task("coloring:3");
  CHECK(t.in_labels == std::vector<Label>{kUnitLabel});
  CHECK(t.in_stars.size() == 1);
  CHECK(t.out_labels.size() == 3);

  Complex in = build_input_complex(t);
  CHECK(in.facets().size() == 1);

  // ordered adjacent-distinct triples over 3 labels: 3 * 2 * 2
  Complex out = build_output_complex(t);
  CHECK(out.facets().size() == 12);

  CHECK_THROWS_AS(builtin_task("coloring:1"), Error);
  CHECK_THROWS_AS(builtin_task("no-such-task"), Error);
}

TEST_CASE("builtin 3col-no-xyzyx forbids the palindromic window in both role orders") {
  LclTask t = builtin_task("3col-no-xyzyx");
  CHECK(t.forbidden_windows.size() == 2);
  CHECK_FALSE(window_ok(t, {"1", "2", "3", "2", "1"}));
  CHECK_FALSE(window_ok(t, {"3", "2", "1", "2", "3"}));
  CHECK(window_ok(t, {"2", "1", "3", "1", "2"}));  // different y role stays allowed
  CHECK(window_ok(t, {"1", "2", "3", "2", "3"}));
  // suffix containment is caught anywhere in a longer window
  CHECK_FALSE(window_ok(t, {"3", "1", "2", "3", "2", "1"}));
}

TEST_CASE("parse_task accepts documents and builtins") {
  std::string doc = R"({
    "name": "2col-to-mis",
    "degree": 2,
    "in_labels": ["1", "2"],
    "in_stars": "proper",
    "out_labels": ["0", "1"],
    "out_stars": [
      {"center": "1", "leaves": ["0", "0"]},
      {"center": "0", "leaves": ["0", "1"]},
      {"center": "0", "leaves": ["1", "1"]}
    ],
    "delta": "unconstrained"
  })";
  LclTask t = parse_task(doc);
  CHECK(t.in_stars.size() == 2);
  CHECK(build_input_complex(t).facets().size() == 2);

  LclTask b = parse_task(R"({"builtin": "mis"})");
  CHECK(b.in_labels == std::vector<Label>{kUnitLabel});
}

TEST_CASE("parse_task rejects malformed documents") {
  try {
    parse_task("{ not json");
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::syntax_error);
  }

  // omitting out_labels
  try {
    parse_task(R"({"in_labels": ["a"], "in_stars": "all", "out_stars": "all"})");
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::semantic_error);
  }

  // star uses an undeclared label
  CHECK_THROWS_AS(parse_task(R"({
    "in_labels": ["a"], "in_stars": [{"center": "b", "leaves": ["a", "a"]}],
    "out_labels": ["x"], "out_stars": "all"})"),
                  Error);

  // per-node relation must allow an output for every input
  CHECK_THROWS_AS(parse_task(R"({
    "in_labels": ["a", "b"], "in_stars": "all",
    "out_labels": ["x"], "out_stars": "all",
    "delta": {"per_node": [["a", "x"]]}})"),
                  Error);

  // reserved characters in labels
  CHECK_THROWS_AS(parse_task(R"({
    "in_labels": ["a|b"], "in_stars": "all",
    "out_labels": ["x"], "out_stars": "all"})"),
                  Error);
}

TEST_CASE("good_star follows the MIS and coloring rules") {
  LclTask t = builtin_task("3col-to-mis");
  CHECK(good_star(t, Side::out, Star::of("1", {"0", "0"})));
  CHECK_FALSE(good_star(t, Side::out, Star::of("0", {"0", "0"})));
  CHECK(good_star(t, Side::out, Star::of("0", {"1", "0"})));
  CHECK_FALSE(good_star(t, Side::in, Star::of("1", {"1", "2"})));  // center equals a leaf
  CHECK(good_star(t, Side::in, Star::of("1", {"2", "2"})));
}

TEST_CASE("star membership is leaf-order invariant") {
  LclTask t = builtin_task("3col-to-mis");
  for (const auto& c : t.in_labels)
    for (const auto& x : t.in_labels)
      for (const auto& y : t.in_labels)
        CHECK(good_star(t, Side::in, Star::of(c, {x, y})) ==
              good_star(t, Side::in, Star::of(c, {y, x})));
}

TEST_CASE("delta_allows") {
  LclTask unconstrained = builtin_task("3col-to-mis");
  Facet in = ring_facet("1", "2", "1");
  Facet out = ring_facet("0", "1", "0");
  CHECK(delta_allows(unconstrained, in, out));

  // list-coloring style: input label "a" permits outputs {1,2}, "b" permits {3}
  std::string doc = R"({
    "name": "lists", "degree": 2,
    "in_labels": ["a", "b"], "in_stars": "all",
    "out_labels": ["1", "2", "3"], "out_stars": "proper",
    "delta": {"per_node": [["a", "1"], ["a", "2"], ["b", "3"]]}
  })";
  LclTask lists = parse_task(doc);
  CHECK_FALSE(delta_allows(lists, ring_facet("b", "a", "b"), ring_facet("3", "3", "3")));
  CHECK(delta_allows(lists, ring_facet("b", "a", "b"), ring_facet("3", "1", "3")));
  CHECK_FALSE(delta_allows(lists, ring_facet("b", "a", "b"), ring_facet("3", "1", "1")));

  // a full per-node relation degenerates to unconstrained
  std::string full = R"({
    "name": "full", "degree": 2,
    "in_labels": ["a"], "in_stars": "all",
    "out_labels": ["0", "1"],
    "out_stars": [
      {"center": "1", "leaves": ["0", "0"]},
      {"center": "0", "leaves": ["0", "1"]},
      {"center": "0", "leaves": ["1", "1"]}
    ],
    "delta": {"per_node": [["a", "0"], ["a", "1"]]}
  })";
  LclTask t2 = parse_task(full);
  Complex out2 = build_output_complex(t2);
  for (const auto& f : out2.facets())
    CHECK(delta_allows(t2, ring_facet("a", "a", "a"), f));

  // explicit star pairs
  std::string pairs = R"({
    "name": "pairs", "degree": 2,
    "in_labels": ["a", "b"], "in_stars": "all",
    "out_labels": ["0", "1"], "out_stars": "all",
    "delta": {"pairs": [
      [{"center": "a", "leaves": ["a", "a"]}, {"center": "1", "leaves": ["0", "0"]}]
    ]}
  })";
  LclTask t3 = parse_task(pairs);
  CHECK(delta_allows(t3, ring_facet("a", "a", "a"), ring_facet("0", "1", "0")));
  CHECK_FALSE(delta_allows(t3, ring_facet("a", "a", "a"), ring_facet("0", "0", "0")));
  CHECK_FALSE(delta_allows(t3, ring_facet("b", "a", "a"), ring_facet("0", "1", "0")));
}

TEST_CASE("side complexes require a satisfiable star set") {
  LclTask t = builtin_task("3col-to-mis");
  t.out_stars.clear();
  try {
    build_output_complex(t);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::empty_complex);
  }
}

TEST_CASE("task JSON round trip") {
  for (const char* name : {"3col-to-mis", "coloring:3", "3col-no-xyzyx", "mis"}) {
    LclTask t = builtin_task(name);
    LclTask back = parse_task(task_to_json(t));
    CHECK(back.in_labels == t.in_labels);
    CHECK(back.in_stars == t.in_stars);
    CHECK(back.out_stars == t.out_stars);
    CHECK(back.forbidden_windows == t.forbidden_windows);
  }
}
