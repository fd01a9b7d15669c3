// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <memory>
#include <span>
#include <string>
#include <utility>

#include "solstat/errors.hpp"
#include "solstat/jet.hpp"

namespace solstat {

/// Scalar expression over chart coordinates x0..x{n-1}.
///
/// Grammar: standard precedence (^ above unary minus above * / above + -),
/// left-associative except right-associative ^, parentheses, whitespace-free
/// semantics. Functions: sin cos tan exp log sinh cosh tanh sqrt abs.
/// Constants: pi, e. Parse failures throw SyntaxError with a byte offset.
class Expression {
    enum class Kind : std::uint8_t { Lit, Var, Add, Sub, Mul, Div, Pow, Neg, Call };
    enum class Fn : std::uint8_t { Sin, Cos, Tan, Exp, Log, Sinh, Cosh, Tanh, Sqrt, Abs };

    struct Node {
        Kind kind;
        Fn fn = Fn::Sin;
        double lit = 0.0;
        int var = -1;
        std::size_t offset = 0;
        std::shared_ptr<const Node> a, b;
    };
    using NodePtr = std::shared_ptr<const Node>;

public:
    Expression() = default;

    static Expression parse(const std::string& text) {
        Parser p{text, 0};
        NodePtr root = p.parse_expr();
        p.skip_ws();
        if (p.pos != text.size()) throw SyntaxError(p.pos, "end of input");
        Expression e;
        e.root_ = std::move(root);
        e.source_ = text;
        e.max_var_ = max_var(e.root_.get());
        return e;
    }

    bool empty() const { return root_ == nullptr; }
    const std::string& source() const { return source_; }

    /// Highest coordinate index referenced, or -1 for constant expressions.
    int max_var() const { return max_var_; }

    /// Validates that every referenced variable exists in a `dim`-dimensional chart.
    void bind(int dim) const {
        if (max_var_ >= dim)
            throw SpecParseError("expression",
                                 "references x" + std::to_string(max_var_) + " but chart dimension is " +
                                     std::to_string(dim) + ": " + source_);
    }

    Jet eval_jet(std::span<const double> x) const {
        if (!root_) throw Error("evaluating an empty expression");
        return eval_j(root_.get(), x);
    }

    /// Plain double evaluation; an independent path from the jet pipeline.
    double eval_value(std::span<const double> x) const {
        if (!root_) throw Error("evaluating an empty expression");
        return eval_v(root_.get(), x);
    }

    std::string print() const { return root_ ? print_node(root_.get()) : std::string(); }

    friend bool same_structure(const Expression& lhs, const Expression& rhs) {
        return eq(lhs.root_.get(), rhs.root_.get());
    }

private:
    struct Parser {
        const std::string& s;
        std::size_t pos;

        void skip_ws() {
            while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
        }
        bool peek(char c) {
            skip_ws();
            return pos < s.size() && s[pos] == c;
        }
        bool eat(char c) {
            if (!peek(c)) return false;
            ++pos;
            return true;
        }

        NodePtr parse_expr() {
            NodePtr lhs = parse_term();
            for (;;) {
                skip_ws();
                if (eat('+')) lhs = binary(Kind::Add, lhs, parse_term());
                else if (eat('-')) lhs = binary(Kind::Sub, lhs, parse_term());
                else return lhs;
            }
        }

        NodePtr parse_term() {
            NodePtr lhs = parse_factor();
            for (;;) {
                skip_ws();
                if (eat('*')) lhs = binary(Kind::Mul, lhs, parse_factor());
                else if (eat('/')) lhs = binary(Kind::Div, lhs, parse_factor());
                else return lhs;
            }
        }

        NodePtr parse_factor() {
            skip_ws();
            if (eat('-')) {
                auto n = std::make_shared<Node>();
                n->kind = Kind::Neg;
                n->offset = pos - 1;
                n->a = parse_factor();
                return n;
            }
            return parse_power();
        }

        NodePtr parse_power() {
            NodePtr base = parse_atom();
            skip_ws();
            if (eat('^')) return binary(Kind::Pow, base, parse_factor());
            return base;
        }

        NodePtr parse_atom() {
            skip_ws();
            if (pos >= s.size()) throw SyntaxError(pos, "a value");
            const char c = s[pos];
            if (c == '(') {
                ++pos;
                NodePtr inner = parse_expr();
                skip_ws();
                if (!eat(')')) throw SyntaxError(pos, ")");
                return inner;
            }
            if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_ident();
            throw SyntaxError(pos, "a value");
        }

        NodePtr parse_number() {
            const char* begin = s.c_str() + pos;
            char* end = nullptr;
            const double v = std::strtod(begin, &end);
            if (end == begin) throw SyntaxError(pos, "a number");
            auto n = std::make_shared<Node>();
            n->kind = Kind::Lit;
            n->lit = v;
            n->offset = pos;
            pos += static_cast<std::size_t>(end - begin);
            return n;
        }

        NodePtr parse_ident() {
            const std::size_t start = pos;
            while (pos < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
                ++pos;
            const std::string name = s.substr(start, pos - start);
            auto n = std::make_shared<Node>();
            n->offset = start;
            if (name == "pi") { n->kind = Kind::Lit; n->lit = 3.14159265358979323846; return n; }
            if (name == "e") { n->kind = Kind::Lit; n->lit = 2.71828182845904523536; return n; }
            if (name.size() > 1 && name[0] == 'x' &&
                name.find_first_not_of("0123456789", 1) == std::string::npos) {
                n->kind = Kind::Var;
                n->var = std::atoi(name.c_str() + 1);
                return n;
            }
            static const std::pair<const char*, Fn> fns[] = {
                {"sin", Fn::Sin}, {"cos", Fn::Cos}, {"tan", Fn::Tan},   {"exp", Fn::Exp},
                {"log", Fn::Log}, {"sinh", Fn::Sinh}, {"cosh", Fn::Cosh}, {"tanh", Fn::Tanh},
                {"sqrt", Fn::Sqrt}, {"abs", Fn::Abs}};
            for (const auto& [fname, fn] : fns) {
                if (name == fname) {
                    skip_ws();
                    if (!eat('(')) throw SyntaxError(pos, "(");
                    n->kind = Kind::Call;
                    n->fn = fn;
                    n->a = parse_expr();
                    skip_ws();
                    if (!eat(')')) throw SyntaxError(pos, ")");
                    return n;
                }
            }
            throw SyntaxError(start, "a known identifier (pi, e, x<k>, or a function name)");
        }

        static NodePtr binary(Kind k, NodePtr a, NodePtr b) {
            auto n = std::make_shared<Node>();
            n->kind = k;
            n->offset = a->offset;
            n->a = std::move(a);
            n->b = std::move(b);
            return n;
        }
    };

    static int max_var(const Node* n) {
        if (!n) return -1;
        int m = n->kind == Kind::Var ? n->var : -1;
        if (n->a) m = std::max(m, max_var(n->a.get()));
        if (n->b) m = std::max(m, max_var(n->b.get()));
        return m;
    }

    static Jet eval_j(const Node* n, std::span<const double> x) {
        const int dim = static_cast<int>(x.size());
        try {
            switch (n->kind) {
                case Kind::Lit: return Jet::constant(dim, n->lit);
                case Kind::Var:
                    if (n->var >= dim) throw EvalError(n->offset, "variable index out of range");
                    return Jet::variable(dim, n->var, x[n->var]);
                case Kind::Add: return eval_j(n->a.get(), x) + eval_j(n->b.get(), x);
                case Kind::Sub: return eval_j(n->a.get(), x) - eval_j(n->b.get(), x);
                case Kind::Mul: return eval_j(n->a.get(), x) * eval_j(n->b.get(), x);
                case Kind::Div: return eval_j(n->a.get(), x) / eval_j(n->b.get(), x);
                case Kind::Pow: return pow(eval_j(n->a.get(), x), eval_j(n->b.get(), x));
                case Kind::Neg: return -eval_j(n->a.get(), x);
                case Kind::Call: return apply(n->fn, eval_j(n->a.get(), x));
            }
        } catch (const EvalError&) {
            throw;
        } catch (const DomainError& err) {
            throw EvalError(n->offset, err.what());
        }
        throw std::logic_error("unreachable expression kind");
    }

    static Jet apply(Fn fn, const Jet& u) {
        switch (fn) {
            case Fn::Sin: return sin(u);
            case Fn::Cos: return cos(u);
            case Fn::Tan: return tan(u);
            case Fn::Exp: return exp(u);
            case Fn::Log: return log(u);
            case Fn::Sinh: return sinh(u);
            case Fn::Cosh: return cosh(u);
            case Fn::Tanh: return tanh(u);
            case Fn::Sqrt: return sqrt(u);
            case Fn::Abs: return abs(u);
        }
        throw std::logic_error("unreachable function kind");
    }

    static double eval_v(const Node* n, std::span<const double> x) {
        switch (n->kind) {
            case Kind::Lit: return n->lit;
            case Kind::Var:
                if (n->var >= static_cast<int>(x.size()))
                    throw EvalError(n->offset, "variable index out of range");
                return x[n->var];
            case Kind::Add: return eval_v(n->a.get(), x) + eval_v(n->b.get(), x);
            case Kind::Sub: return eval_v(n->a.get(), x) - eval_v(n->b.get(), x);
            case Kind::Mul: return eval_v(n->a.get(), x) * eval_v(n->b.get(), x);
            case Kind::Div: {
                const double d = eval_v(n->b.get(), x);
                if (d == 0.0) throw EvalError(n->b->offset, "division by zero");
                return eval_v(n->a.get(), x) / d;
            }
            case Kind::Pow: return std::pow(eval_v(n->a.get(), x), eval_v(n->b.get(), x));
            case Kind::Neg: return -eval_v(n->a.get(), x);
            case Kind::Call: {
                const double v = eval_v(n->a.get(), x);
                switch (n->fn) {
                    case Fn::Sin: return std::sin(v);
                    case Fn::Cos: return std::cos(v);
                    case Fn::Tan: return std::tan(v);
                    case Fn::Exp: return std::exp(v);
                    case Fn::Log:
                        if (v <= 0.0) throw EvalError(n->offset, "log of non-positive value");
                        return std::log(v);
                    case Fn::Sinh: return std::sinh(v);
                    case Fn::Cosh: return std::cosh(v);
                    case Fn::Tanh: return std::tanh(v);
                    case Fn::Sqrt:
                        if (v <= 0.0) throw EvalError(n->offset, "sqrt of non-positive value");
                        return std::sqrt(v);
                    case Fn::Abs: return std::abs(v);
                }
            }
        }
        throw std::logic_error("unreachable expression kind");
    }

    static std::string print_node(const Node* n) {
        static const char* fname[] = {"sin", "cos", "tan", "exp", "log", "sinh", "cosh", "tanh", "sqrt", "abs"};
        char buf[40];
        switch (n->kind) {
            case Kind::Lit:
                std::snprintf(buf, sizeof buf, "%.17g", n->lit);
                return buf;
            case Kind::Var: return "x" + std::to_string(n->var);
            case Kind::Add: return "(" + print_node(n->a.get()) + " + " + print_node(n->b.get()) + ")";
            case Kind::Sub: return "(" + print_node(n->a.get()) + " - " + print_node(n->b.get()) + ")";
            case Kind::Mul: return "(" + print_node(n->a.get()) + " * " + print_node(n->b.get()) + ")";
            case Kind::Div: return "(" + print_node(n->a.get()) + " / " + print_node(n->b.get()) + ")";
            case Kind::Pow: return "(" + print_node(n->a.get()) + "^" + print_node(n->b.get()) + ")";
            case Kind::Neg: return "(-" + print_node(n->a.get()) + ")";
            case Kind::Call:
                return std::string(fname[static_cast<int>(n->fn)]) + "(" + print_node(n->a.get()) + ")";
        }
        return {};
    }

    static bool eq(const Node* a, const Node* b) {
        if (!a || !b) return a == b;
        if (a->kind != b->kind) return false;
        if (a->kind == Kind::Lit) return a->lit == b->lit;
        if (a->kind == Kind::Var) return a->var == b->var;
        if (a->kind == Kind::Call && a->fn != b->fn) return false;
        return eq(a->a.get(), b->a.get()) && eq(a->b.get(), b->b.get());
    }

    NodePtr root_;
    std::string source_;
    int max_var_ = -1;
};

} // namespace solstat
