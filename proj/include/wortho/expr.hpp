#pragma once

// Weight expressions in one variable x, e.g. "exp(-2*0.5*acos(x)) * (1 - x^2)^(0.75 - 1)".
//
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := '-' factor | base ('^' factor)?
//   base   := number | 'x' | ident '(' expr ')' | '(' expr ')'
//   ident  := exp | sqrt | acos | cos | sin | abs

#include <wortho/error.hpp>

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace wortho {

class WeightExpr {
public:
    enum class Op : std::uint8_t { num, var, neg, add, sub, mul, div, pow, exp, sqrt, acos, cos, sin, abs };

    struct Node {
        Op op;
        double value = 0.0; // num only
        int lhs = -1;       // operand / left child
        int rhs = -1;       // right child of binary ops
    };

    double operator()(double x) const {
        const double v = eval(root_, x);
        if (!std::isfinite(v)) {
            char buf[96];
            std::snprintf(buf, sizeof buf, "weight expression is not finite at x = %.17g", x);
            throw numeric_error(buf);
        }
        return v;
    }

    /// Prefix rendering of the tree, e.g. "Sub(1, x)".
    std::string to_string() const { return render(root_); }

    const std::string& source() const noexcept { return source_; }
    std::span<const Node> nodes() const noexcept { return nodes_; }
    int root() const noexcept { return root_; }

private:
    friend WeightExpr parse_weight(std::string_view);

    double eval(int i, double x) const {
        const Node& n = nodes_[static_cast<std::size_t>(i)];
        switch (n.op) {
        case Op::num: return n.value;
        case Op::var: return x;
        case Op::neg: return -eval(n.lhs, x);
        case Op::add: return eval(n.lhs, x) + eval(n.rhs, x);
        case Op::sub: return eval(n.lhs, x) - eval(n.rhs, x);
        case Op::mul: return eval(n.lhs, x) * eval(n.rhs, x);
        case Op::div: return eval(n.lhs, x) / eval(n.rhs, x);
        case Op::pow: return std::pow(eval(n.lhs, x), eval(n.rhs, x));
        case Op::exp: return std::exp(eval(n.lhs, x));
        case Op::sqrt: return std::sqrt(eval(n.lhs, x));
        case Op::acos: return std::acos(eval(n.lhs, x));
        case Op::cos: return std::cos(eval(n.lhs, x));
        case Op::sin: return std::sin(eval(n.lhs, x));
        case Op::abs: return std::abs(eval(n.lhs, x));
        }
        return std::nan("");
    }

    std::string render(int i) const {
        const Node& n = nodes_[static_cast<std::size_t>(i)];
        auto binary = [&](const char* name) { return std::string(name) + "(" + render(n.lhs) + ", " + render(n.rhs) + ")"; };
        auto unary = [&](const char* name) { return std::string(name) + "(" + render(n.lhs) + ")"; };
        switch (n.op) {
        case Op::num: {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.17g", n.value);
            return buf;
        }
        case Op::var: return "x";
        case Op::neg: return unary("Neg");
        case Op::add: return binary("Add");
        case Op::sub: return binary("Sub");
        case Op::mul: return binary("Mul");
        case Op::div: return binary("Div");
        case Op::pow: return binary("Pow");
        case Op::exp: return unary("exp");
        case Op::sqrt: return unary("sqrt");
        case Op::acos: return unary("acos");
        case Op::cos: return unary("cos");
        case Op::sin: return unary("sin");
        case Op::abs: return unary("abs");
        }
        return "?";
    }

    std::string source_;
    std::vector<Node> nodes_;
    int root_ = -1;
};

namespace detail {

class ExprParser {
public:
    explicit ExprParser(std::string_view src) : src_(src) {}

    int parse_all(std::vector<WeightExpr::Node>& out) {
        out_ = &out;
        const int root = expr();
        skip_ws();
        if (pos_ != src_.size()) fail("unexpected character '" + std::string(1, src_[pos_]) + "'");
        return root;
    }

private:
    using Op = WeightExpr::Op;

    [[noreturn]] void fail(const std::string& msg) const { throw parse_error("syntax error: " + msg, pos_); }

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) {
            if (pos_ >= src_.size()) fail(std::string("expected '") + c + "' before end of input");
            fail(std::string("expected '") + c + "'");
        }
    }

    int push(Op op, int lhs = -1, int rhs = -1, double value = 0.0) {
        out_->push_back({op, value, lhs, rhs});
        return static_cast<int>(out_->size()) - 1;
    }

    int expr() {
        int lhs = term();
        for (;;) {
            if (accept('+')) lhs = push(Op::add, lhs, term());
            else if (accept('-')) lhs = push(Op::sub, lhs, term());
            else return lhs;
        }
    }

    int term() {
        int lhs = factor();
        for (;;) {
            if (accept('*')) lhs = push(Op::mul, lhs, factor());
            else if (accept('/')) lhs = push(Op::div, lhs, factor());
            else return lhs;
        }
    }

    int factor() {
        if (accept('-')) return push(Op::neg, factor());
        const int b = base();
        if (accept('^')) return push(Op::pow, b, factor());
        return b;
    }

    int base() {
        skip_ws();
        if (pos_ >= src_.size()) fail("unexpected end of input");
        const char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) return call_or_var();
        if (accept('(')) {
            const int inner = expr();
            expect(')');
            return inner;
        }
        fail("unexpected character '" + std::string(1, c) + "'");
    }

    int number() {
        const std::size_t start = pos_;
        while (pos_ < src_.size() && (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.')) ++pos_;
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t p = pos_ + 1;
            if (p < src_.size() && (src_[p] == '+' || src_[p] == '-')) ++p;
            if (p < src_.size() && std::isdigit(static_cast<unsigned char>(src_[p]))) {
                pos_ = p;
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
            }
        }
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(src_.data() + start, src_.data() + pos_, v);
        if (ec != std::errc() || ptr != src_.data() + pos_) {
            pos_ = start;
            fail("malformed number");
        }
        return push(Op::num, -1, -1, v);
    }

    int call_or_var() {
        const std::size_t start = pos_;
        while (pos_ < src_.size() && std::isalnum(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        const std::string_view name = src_.substr(start, pos_ - start);
        if (name == "x") return push(Op::var);

        static constexpr std::array<std::pair<std::string_view, Op>, 6> functions{{
            {"exp", Op::exp}, {"sqrt", Op::sqrt}, {"acos", Op::acos},
            {"cos", Op::cos}, {"sin", Op::sin}, {"abs", Op::abs},
        }};
        for (const auto& [fname, op] : functions) {
            if (name == fname) {
                expect('(');
                const int arg = expr();
                expect(')');
                return push(op, arg);
            }
        }
        throw parse_error("unknown identifier '" + std::string(name) + "'", start);
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    std::vector<WeightExpr::Node>* out_ = nullptr;
};

} // namespace detail

/// Parses a weight expression; throws parse_error carrying the byte offset of the problem.
inline WeightExpr parse_weight(std::string_view source) {
    WeightExpr e;
    e.source_ = std::string(source);
    detail::ExprParser parser(source);
    e.root_ = parser.parse_all(e.nodes_);
    return e;
}

} // namespace wortho
