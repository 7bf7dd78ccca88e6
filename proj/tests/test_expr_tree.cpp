#include <doctest.h>

#include <cmath>

#include "gsgp/semantics.hpp"

using namespace gsgp;

namespace {

ExpressionTree x(int i) { return ExpressionTree::variable(static_cast<std::uint8_t>(i)); }

} // namespace

TEST_CASE("evaluate basic arithmetic") {
    std::array<double, 6> f{2, 3, 0, 0, 0, 0};
    CHECK(ExpressionTree::binary(Op::Add, x(0), x(1)).evaluate(f) == 5.0);
    CHECK(ExpressionTree::constant(1.876).evaluate(f) == 1.876);
}

TEST_CASE("protected division yields 1 on near-zero divisors") {
    std::array<double, 6> f{7, 0, 0, 0, 0, 0};
    auto t = ExpressionTree::binary(Op::Div, x(0), x(2));
    CHECK(t.evaluate(f) == 1.0);
    f[2] = 5e-10;
    CHECK(t.evaluate(f) == 1.0);
    f[2] = 2.0;
    CHECK(t.evaluate(f) == 3.5);
}

TEST_CASE("random_tree depth bounds") {
    Rng rng(7);

    SUBCASE("max_depth 1 forces a single terminal") {
        TreeGenConfig cfg{1, 1, GenMethod::Grow};
        for (int i = 0; i < 100; ++i) {
            ExpressionTree t = random_tree(cfg, rng);
            CHECK(t.node_count() == 1);
            CHECK(t.depth() == 1);
        }
    }

    SUBCASE("Full puts every leaf at the target depth") {
        TreeGenConfig cfg{1, 3, GenMethod::Full};
        ExpressionTree t = random_tree(cfg, rng);
        CHECK(t.depth() == 3);
        CHECK(t.node_count() == 7); // perfect binary tree of depth 3
    }

    SUBCASE("10,000 sampled trees satisfy the configured bounds") {
        TreeGenConfig cfg{2, 6, GenMethod::RampedHalfAndHalf};
        for (int i = 0; i < 10000; ++i) {
            std::size_t d = random_tree(cfg, rng).depth();
            CHECK(d >= 2);
            CHECK(d <= 6);
        }
    }
}

TEST_CASE("random_tree is deterministic given the seed") {
    TreeGenConfig cfg{2, 6, GenMethod::RampedHalfAndHalf, true, -1.0, 1.0};
    Rng a(42), b(42);
    for (int i = 0; i < 50; ++i) CHECK(random_tree(cfg, a) == random_tree(cfg, b));
}

TEST_CASE("evaluate_on_dataset") {
    const SlopeDataset& ds = embedded_dataset();
    std::vector<std::size_t> idx{0, 1, 2};

    CHECK(evaluate_on_dataset(ExpressionTree::constant(2), ds, idx) == Semantics{2, 2, 2});
    // x5 is the slope height column
    CHECK(evaluate_on_dataset(x(4), ds, idx) == Semantics{30.6, 50, 50});
    CHECK(evaluate_on_dataset(x(4), ds, {}).empty());
}

TEST_CASE("text round-trip") {
    auto t = ExpressionTree::binary(Op::Add, x(0), x(1));
    CHECK(to_text(t) == "(x1 + x2)");
    CHECK(parse_text("(x1 + x2)") == t);

    ExpressionTree five = parse_text("((x1 * x2) / x6)");
    CHECK(five.node_count() == 5);

    CHECK_THROWS_AS(parse_text("x7"), TreeParseError);
    CHECK_THROWS_AS(parse_text("(x1 +"), TreeParseError);
    CHECK_THROWS_AS(parse_text("(x1 + x2) junk"), TreeParseError);
}

TEST_CASE("parse_text . to_text is the identity on 1,000 random trees") {
    TreeGenConfig cfg{2, 6, GenMethod::RampedHalfAndHalf, true, -2.0, 2.0};
    Rng rng(3);
    for (int i = 0; i < 1000; ++i) {
        ExpressionTree t = random_tree(cfg, rng);
        CHECK(parse_text(to_text(t)) == t);
    }
}

TEST_CASE("logistic node survives the text format") {
    ExpressionTree t = ExpressionTree::logistic(ExpressionTree::binary(Op::Sub, x(0), x(3)));
    CHECK(parse_text(to_text(t)) == t);
    std::array<double, 6> f{1, 0, 0, 1, 0, 0};
    CHECK(t.evaluate(f) == 0.5);
}

TEST_CASE("totality fuzz: finite results for any tree on any table row") {
    TreeGenConfig cfg{2, 12, GenMethod::RampedHalfAndHalf};
    Rng rng(11);
    const SlopeDataset& ds = embedded_dataset();
    for (int i = 0; i < 500; ++i) {
        ExpressionTree t = random_tree(cfg, rng);
        for (const SlopeSample& s : ds.samples()) {
            std::array<double, 6> f = s.features();
            CHECK(std::isfinite(t.evaluate(f)));
        }
    }
}

TEST_CASE("subtree splice preserves structure") {
    ExpressionTree t = parse_text("((x1 * x2) / (x3 - x4))");
    ExpressionTree sub = t.subtree(1);
    CHECK(to_text(sub) == "(x1 * x2)");
    ExpressionTree repl = t.replace_subtree(1, x(5));
    CHECK(to_text(repl) == "(x6 / (x3 - x4))");
    CHECK(parse_text(to_text(repl)) == repl);
}
