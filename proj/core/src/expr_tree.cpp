#include "gsgp/expr_tree.hpp"

#include <charconv>
#include <cmath>

namespace gsgp {

namespace {

bool is_binary(Op op) { return op == Op::Add || op == Op::Sub || op == Op::Mul || op == Op::Div; }

std::size_t validate(const std::vector<Node>& nodes, std::size_t idx) {
    if (idx >= nodes.size()) throw std::invalid_argument("truncated preorder node array");
    const Node& n = nodes[idx];
    std::size_t end = idx + 1;
    if (is_binary(n.op)) {
        end = validate(nodes, end);
        end = validate(nodes, end);
    } else if (n.op == Op::Logistic) {
        end = validate(nodes, end);
    } else if (n.op == Op::Var && n.var >= 6) {
        throw std::invalid_argument("variable index out of range");
    }
    if (n.size != end - idx) throw std::invalid_argument("inconsistent subtree size");
    return end;
}

double eval_at(const std::vector<Node>& nodes, std::size_t idx,
               std::span<const double, 6> features) {
    const Node& n = nodes[idx];
    switch (n.op) {
        case Op::Var: return features[n.var];
        case Op::Const: return n.value;
        case Op::Logistic: {
            double x = eval_at(nodes, idx + 1, features);
            return 1.0 / (1.0 + std::exp(-x));
        }
        default: break;
    }
    std::size_t left = idx + 1;
    std::size_t right = left + nodes[left].size;
    double a = eval_at(nodes, left, features);
    double b = eval_at(nodes, right, features);
    switch (n.op) {
        case Op::Add: return a + b;
        case Op::Sub: return a - b;
        case Op::Mul: return a * b;
        case Op::Div: return std::fabs(b) <= kProtectedDivEpsilon ? 1.0 : a / b;
        default: return 0.0; // unreachable
    }
}

std::size_t depth_at(const std::vector<Node>& nodes, std::size_t idx) {
    const Node& n = nodes[idx];
    if (n.op == Op::Var || n.op == Op::Const) return 1;
    if (n.op == Op::Logistic) return 1 + depth_at(nodes, idx + 1);
    std::size_t left = idx + 1;
    std::size_t right = left + nodes[left].size;
    return 1 + std::max(depth_at(nodes, left), depth_at(nodes, right));
}

} // namespace

ExpressionTree::ExpressionTree(std::vector<Node> preorder) : nodes_(std::move(preorder)) {
    if (nodes_.empty()) throw std::invalid_argument("empty tree");
    if (validate(nodes_, 0) != nodes_.size()) throw std::invalid_argument("trailing nodes");
}

ExpressionTree ExpressionTree::variable(std::uint8_t index) {
    return ExpressionTree({Node{Op::Var, index, 0.0, 1}});
}

ExpressionTree ExpressionTree::constant(double value) {
    return ExpressionTree({Node{Op::Const, 0, value, 1}});
}

ExpressionTree ExpressionTree::binary(Op op, ExpressionTree left, ExpressionTree right) {
    if (!is_binary(op)) throw std::invalid_argument("not a binary op");
    std::vector<Node> nodes;
    nodes.reserve(1 + left.nodes_.size() + right.nodes_.size());
    nodes.push_back(Node{op, 0, 0.0,
                         static_cast<std::uint32_t>(1 + left.nodes_.size() + right.nodes_.size())});
    nodes.insert(nodes.end(), left.nodes_.begin(), left.nodes_.end());
    nodes.insert(nodes.end(), right.nodes_.begin(), right.nodes_.end());
    ExpressionTree t;
    t.nodes_ = std::move(nodes);
    return t;
}

ExpressionTree ExpressionTree::logistic(ExpressionTree inner) {
    std::vector<Node> nodes;
    nodes.reserve(1 + inner.nodes_.size());
    nodes.push_back(Node{Op::Logistic, 0, 0.0, static_cast<std::uint32_t>(1 + inner.nodes_.size())});
    nodes.insert(nodes.end(), inner.nodes_.begin(), inner.nodes_.end());
    ExpressionTree t;
    t.nodes_ = std::move(nodes);
    return t;
}

double ExpressionTree::evaluate(std::span<const double, 6> features) const {
    return eval_at(nodes_, 0, features);
}

std::size_t ExpressionTree::depth() const { return depth_at(nodes_, 0); }

ExpressionTree ExpressionTree::subtree(std::size_t index) const {
    if (index >= nodes_.size()) throw std::out_of_range("subtree index");
    ExpressionTree t;
    t.nodes_.assign(nodes_.begin() + static_cast<std::ptrdiff_t>(index),
                    nodes_.begin() + static_cast<std::ptrdiff_t>(index + nodes_[index].size));
    return t;
}

ExpressionTree ExpressionTree::replace_subtree(std::size_t index,
                                               const ExpressionTree& replacement) const {
    if (index >= nodes_.size()) throw std::out_of_range("subtree index");
    std::uint32_t old_size = nodes_[index].size;
    std::int64_t delta =
        static_cast<std::int64_t>(replacement.nodes_.size()) - static_cast<std::int64_t>(old_size);
    ExpressionTree t;
    t.nodes_.reserve(nodes_.size() + static_cast<std::size_t>(std::max<std::int64_t>(delta, 0)));
    t.nodes_.assign(nodes_.begin(), nodes_.begin() + static_cast<std::ptrdiff_t>(index));
    t.nodes_.insert(t.nodes_.end(), replacement.nodes_.begin(), replacement.nodes_.end());
    t.nodes_.insert(t.nodes_.end(), nodes_.begin() + static_cast<std::ptrdiff_t>(index + old_size),
                    nodes_.end());
    // Ancestors of the splice point need their subtree sizes adjusted.
    std::size_t cursor = 0;
    while (cursor < index) {
        Node& n = t.nodes_[cursor];
        std::size_t end = cursor + n.size; // old extent
        if (index < end) {
            n.size = static_cast<std::uint32_t>(static_cast<std::int64_t>(n.size) + delta);
            ++cursor; // descend toward the splice point
            // skip fully-left siblings not containing the splice
            while (cursor < index && cursor + t.nodes_[cursor].size <= index)
                cursor += t.nodes_[cursor].size;
        } else {
            cursor = end;
        }
    }
    return t;
}

namespace {

void gen_rec(std::vector<Node>& out, const TreeGenConfig& cfg, bool full, std::size_t target_depth,
             std::size_t depth, Rng& rng) {
    bool must_terminal = depth >= target_depth;
    bool must_function = depth < cfg.min_depth;
    bool terminal;
    if (must_terminal) {
        terminal = true;
    } else if (must_function || full) {
        terminal = false;
    } else {
        terminal = rng.uniform01() < 0.5;
    }
    if (terminal) {
        if (cfg.constants_enabled && rng.below(7) == 6) {
            out.push_back(Node{Op::Const, 0, rng.uniform(cfg.constant_low, cfg.constant_high), 1});
        } else {
            out.push_back(Node{Op::Var, static_cast<std::uint8_t>(rng.below(6)), 0.0, 1});
        }
        return;
    }
    static constexpr Op kOps[] = {Op::Add, Op::Sub, Op::Mul, Op::Div};
    std::size_t at = out.size();
    out.push_back(Node{kOps[rng.below(4)], 0, 0.0, 1});
    gen_rec(out, cfg, full, target_depth, depth + 1, rng);
    gen_rec(out, cfg, full, target_depth, depth + 1, rng);
    out[at].size = static_cast<std::uint32_t>(out.size() - at);
}

} // namespace

ExpressionTree random_tree(const TreeGenConfig& cfg, Rng& rng) {
    if (cfg.min_depth < 1 || cfg.max_depth < cfg.min_depth) {
        throw std::invalid_argument("invalid depth bounds");
    }
    bool full;
    std::size_t target;
    switch (cfg.method) {
        case GenMethod::Grow:
            full = false;
            target = cfg.max_depth;
            break;
        case GenMethod::Full:
            full = true;
            target = cfg.max_depth;
            break;
        default:
            target = cfg.min_depth + rng.below(cfg.max_depth - cfg.min_depth + 1);
            full = rng.coin();
            break;
    }
    std::vector<Node> nodes;
    gen_rec(nodes, cfg, full, target, 1, rng);
    return ExpressionTree(std::move(nodes));
}

namespace {

void print_rec(const std::vector<Node>& nodes, std::size_t idx, std::string& out) {
    const Node& n = nodes[idx];
    switch (n.op) {
        case Op::Var:
            out += 'x';
            out += static_cast<char>('1' + n.var);
            return;
        case Op::Const: {
            char buf[32];
            auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), n.value);
            out.append(buf, ptr);
            return;
        }
        case Op::Logistic:
            out += "logistic(";
            print_rec(nodes, idx + 1, out);
            out += ')';
            return;
        default: break;
    }
    static constexpr char kSym[] = {'+', '-', '*', '/'};
    std::size_t left = idx + 1;
    std::size_t right = left + nodes[left].size;
    out += '(';
    print_rec(nodes, left, out);
    out += ' ';
    out += kSym[static_cast<int>(n.op)];
    out += ' ';
    print_rec(nodes, right, out);
    out += ')';
}

struct Parser {
    std::string_view text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    }

    [[noreturn]] void fail(const std::string& msg) { throw TreeParseError(msg, pos); }

    void expect(char c) {
        skip_ws();
        if (pos >= text.size() || text[pos] != c) fail(std::string("expected '") + c + "'");
        ++pos;
    }

    void parse_expr(std::vector<Node>& out) {
        skip_ws();
        if (pos >= text.size()) fail("unexpected end of input");
        char c = text[pos];
        if (c == '(') {
            ++pos;
            std::size_t at = out.size();
            out.push_back(Node{Op::Add, 0, 0.0, 1});
            parse_expr(out);
            skip_ws();
            if (pos >= text.size()) fail("expected operator");
            Op op;
            switch (text[pos]) {
                case '+': op = Op::Add; break;
                case '-': op = Op::Sub; break;
                case '*': op = Op::Mul; break;
                case '/': op = Op::Div; break;
                default: fail("expected operator");
            }
            ++pos;
            parse_expr(out);
            expect(')');
            out[at].op = op;
            out[at].size = static_cast<std::uint32_t>(out.size() - at);
            return;
        }
        if (text.compare(pos, 9, "logistic(") == 0) {
            pos += 9;
            std::size_t at = out.size();
            out.push_back(Node{Op::Logistic, 0, 0.0, 1});
            parse_expr(out);
            expect(')');
            out[at].size = static_cast<std::uint32_t>(out.size() - at);
            return;
        }
        if (c == 'x') {
            ++pos;
            if (pos >= text.size() || text[pos] < '1' || text[pos] > '6') {
                fail("variable index must be 1..6");
            }
            std::uint8_t var = static_cast<std::uint8_t>(text[pos] - '1');
            ++pos;
            if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
                fail("variable index must be 1..6");
            }
            out.push_back(Node{Op::Var, var, 0.0, 1});
            return;
        }
        double v = 0;
        auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), v);
        if (ec != std::errc{} || ptr == text.data() + pos) fail("expected expression");
        pos = static_cast<std::size_t>(ptr - text.data());
        out.push_back(Node{Op::Const, 0, v, 1});
    }
};

} // namespace

std::string to_text(const ExpressionTree& tree) {
    std::string out;
    print_rec(tree.nodes(), 0, out);
    return out;
}

ExpressionTree parse_text(std::string_view text) {
    Parser p{text};
    std::vector<Node> nodes;
    p.parse_expr(nodes);
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing input");
    return ExpressionTree(std::move(nodes));
}

} // namespace gsgp
