#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gsgp/rng.hpp"

namespace gsgp {

/// Node kinds. Add/Sub/Mul/Div are binary; Div is protected (divisor with
/// magnitude <= 1e-9 yields 1). Logistic is unary and only appears in trees
/// materialized from tree-mode mutation lineages.
enum class Op : std::uint8_t { Add, Sub, Mul, Div, Logistic, Var, Const };

constexpr double kProtectedDivEpsilon = 1e-9;

struct Node {
    Op op;
    std::uint8_t var = 0;    // Var only, 0-based index < 6
    double value = 0.0;      // Const only
    std::uint32_t size = 1;  // nodes in the subtree rooted here

    bool operator==(const Node&) const = default;
};

class TreeParseError : public std::runtime_error {
  public:
    TreeParseError(const std::string& msg, std::size_t position)
        : std::runtime_error(msg + " at position " + std::to_string(position)), pos(position) {}
    std::size_t pos;
};

/// Expression tree stored as a preorder node array; the left child of node i
/// is i+1 and the right child i+1+size(left). Immutable in normal use;
/// subtree splicing (standard-GP crossover) builds new trees.
class ExpressionTree {
  public:
    ExpressionTree() = default;
    explicit ExpressionTree(std::vector<Node> preorder);

    static ExpressionTree variable(std::uint8_t index);
    static ExpressionTree constant(double value);
    static ExpressionTree binary(Op op, ExpressionTree left, ExpressionTree right);
    static ExpressionTree logistic(ExpressionTree inner);

    double evaluate(std::span<const double, 6> features) const;

    std::size_t node_count() const { return nodes_.size(); }
    std::size_t depth() const;
    const std::vector<Node>& nodes() const { return nodes_; }

    /// Preorder index of the root of a subtree, its node span, and its copy.
    ExpressionTree subtree(std::size_t index) const;
    /// New tree with the subtree at `index` replaced by `replacement`.
    ExpressionTree replace_subtree(std::size_t index, const ExpressionTree& replacement) const;

    bool operator==(const ExpressionTree&) const = default;

  private:
    std::vector<Node> nodes_;
};

enum class GenMethod { Grow, Full, RampedHalfAndHalf };

struct TreeGenConfig {
    std::size_t min_depth = 2;
    std::size_t max_depth = 6;
    GenMethod method = GenMethod::RampedHalfAndHalf;
    bool constants_enabled = false;
    double constant_low = -1.0;
    double constant_high = 1.0;
};

/// Random tree within the configured depth bounds (single terminal = depth 1).
ExpressionTree random_tree(const TreeGenConfig& cfg, Rng& rng);

/// Canonical parenthesized infix, e.g. "((x1 * x2) / x6)".
std::string to_text(const ExpressionTree& tree);
ExpressionTree parse_text(std::string_view text);

} // namespace gsgp
