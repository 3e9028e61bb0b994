#pragma once

#include <cctype>
#include <cmath>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lw/jet.hpp"

namespace lw {

struct ParseError : std::runtime_error {
    size_t offset;  // byte offset into the source text
    ParseError(const std::string& msg, size_t off)
        : std::runtime_error(msg + " (at offset " + std::to_string(off) + ")"), offset(off) {}
};

namespace detail {

enum class NodeKind { Const, Var, Neg, Add, Sub, Mul, Div, Pow, Call };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
    NodeKind kind;
    double value = 0.0;      // Const
    std::string name;        // Call function name
    NodePtr lhs, rhs;        // operands (unary ops use lhs only)
};

inline NodePtr make_const(double v) {
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Const;
    n->value = v;
    return n;
}

inline NodePtr make_unary(NodeKind k, NodePtr a, const std::string& name = {}) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->name = name;
    n->lhs = std::move(a);
    return n;
}

inline NodePtr make_binary(NodeKind k, NodePtr a, NodePtr b) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->lhs = std::move(a);
    n->rhs = std::move(b);
    return n;
}

inline bool is_const(const NodePtr& n, double v) {
    return n->kind == NodeKind::Const && n->value == v;
}

}  // namespace detail

/// A parsed expression in one named free variable.  Immutable; evaluation
/// is pure and safe from any number of threads.
class Expression {
public:
    Expression() = default;

    static Expression parse(const std::string& source, const std::string& variable_name);

    /// Value together with first and second derivative at t.
    Jet2 eval_jet2(double t) const {
        if (!root_) throw std::logic_error("evaluating an empty expression");
        return eval(root_.get(), t);
    }

    double eval_value(double t) const { return eval_jet2(t).v; }

    /// Parseable text form; parse(to_string()) is structurally identical.
    std::string to_string() const {
        std::string out;
        print(root_.get(), 0, out);
        return out;
    }

    const std::string& variable() const { return var_; }
    bool empty() const { return !root_; }

    bool structurally_equal(const Expression& other) const {
        return var_ == other.var_ && equal(root_.get(), other.root_.get());
    }

    // --- syntactic constructors (used for Mobius actions on Weierstrass data) ---

    static Expression constant(double v, const std::string& variable_name) {
        return Expression(detail::make_const(v), variable_name);
    }

    Expression negated() const {
        using namespace detail;
        if (root_->kind == NodeKind::Neg) return Expression(root_->lhs, var_);
        return Expression(make_unary(NodeKind::Neg, root_), var_);
    }

    friend Expression operator+(const Expression& a, const Expression& b) {
        return combine(detail::NodeKind::Add, a, b);
    }
    friend Expression operator-(const Expression& a, const Expression& b) {
        return combine(detail::NodeKind::Sub, a, b);
    }
    friend Expression operator*(const Expression& a, const Expression& b) {
        return combine(detail::NodeKind::Mul, a, b);
    }
    friend Expression operator/(const Expression& a, const Expression& b) {
        return combine(detail::NodeKind::Div, a, b);
    }
    Expression squared() const {
        using namespace detail;
        if (root_->kind == NodeKind::Const)
            return Expression(make_const(root_->value * root_->value), var_);
        return Expression(make_binary(NodeKind::Pow, root_, make_const(2.0)), var_);
    }

private:
    detail::NodePtr root_;
    std::string var_;

    Expression(detail::NodePtr root, std::string var) : root_(std::move(root)), var_(std::move(var)) {}

    // Light constant folding so that identity Mobius maps return the
    // operands unchanged: 0+e, e+0, e-0, 1*e, e*1, 0*e, e*0, e/1.
    static Expression combine(detail::NodeKind k, const Expression& a, const Expression& b) {
        using namespace detail;
        if (!a.root_ || !b.root_) throw std::logic_error("combining an empty expression");
        const std::string& var = a.var_.empty() ? b.var_ : a.var_;
        if (a.root_->kind == NodeKind::Const && b.root_->kind == NodeKind::Const) {
            double x = a.root_->value, y = b.root_->value;
            switch (k) {
            case NodeKind::Add: return Expression(make_const(x + y), var);
            case NodeKind::Sub: return Expression(make_const(x - y), var);
            case NodeKind::Mul: return Expression(make_const(x * y), var);
            case NodeKind::Div:
                if (y != 0.0) return Expression(make_const(x / y), var);
                break;  // leave the pole in the tree; evaluation reports it
            default:
                break;
            }
        }
        switch (k) {
        case NodeKind::Add:
            if (is_const(a.root_, 0.0)) return Expression(b.root_, var);
            if (is_const(b.root_, 0.0)) return Expression(a.root_, var);
            break;
        case NodeKind::Sub:
            if (is_const(b.root_, 0.0)) return Expression(a.root_, var);
            if (is_const(a.root_, 0.0)) return Expression(b.root_, var).negated();
            break;
        case NodeKind::Mul:
            if (is_const(a.root_, 1.0)) return Expression(b.root_, var);
            if (is_const(b.root_, 1.0)) return Expression(a.root_, var);
            if (is_const(a.root_, 0.0) || is_const(b.root_, 0.0))
                return Expression(make_const(0.0), var);
            if (is_const(a.root_, -1.0)) return Expression(b.root_, var).negated();
            if (is_const(b.root_, -1.0)) return Expression(a.root_, var).negated();
            break;
        case NodeKind::Div:
            if (is_const(b.root_, 1.0)) return Expression(a.root_, var);
            if (is_const(b.root_, -1.0)) return Expression(a.root_, var).negated();
            break;
        default:
            break;
        }
        return Expression(make_binary(k, a.root_, b.root_), var);
    }

    Jet2 eval(const detail::Node* n, double t) const {
        using detail::NodeKind;
        try {
            switch (n->kind) {
            case NodeKind::Const: return Jet2::constant(n->value);
            case NodeKind::Var:   return Jet2::variable(t);
            case NodeKind::Neg:   return -eval(n->lhs.get(), t);
            case NodeKind::Add:   return eval(n->lhs.get(), t) + eval(n->rhs.get(), t);
            case NodeKind::Sub:   return eval(n->lhs.get(), t) - eval(n->rhs.get(), t);
            case NodeKind::Mul:   return eval(n->lhs.get(), t) * eval(n->rhs.get(), t);
            case NodeKind::Div:   return eval(n->lhs.get(), t) / eval(n->rhs.get(), t);
            case NodeKind::Pow:   return lw::pow(eval(n->lhs.get(), t), eval(n->rhs.get(), t));
            case NodeKind::Call: {
                Jet2 u = eval(n->lhs.get(), t);
                if (n->name == "sin")  return lw::sin(u);
                if (n->name == "cos")  return lw::cos(u);
                if (n->name == "tan")  return lw::tan(u);
                if (n->name == "sinh") return lw::sinh(u);
                if (n->name == "cosh") return lw::cosh(u);
                if (n->name == "tanh") return lw::tanh(u);
                if (n->name == "exp")  return lw::exp(u);
                if (n->name == "ln")   return lw::ln(u);
                if (n->name == "sqrt") return lw::sqrt(u);
                if (n->name == "abs")  return lw::abs(u);
                throw std::logic_error("unknown function in AST: " + n->name);
            }
            }
        } catch (const DomainError& e) {
            std::string sub;
            print(n, 0, sub);
            std::ostringstream msg;
            msg << e.what() << " in '" << sub << "' at " << var_ << " = " << t;
            throw DomainError(msg.str());
        }
        throw std::logic_error("corrupt AST");
    }

    static bool equal(const detail::Node* a, const detail::Node* b) {
        if (a == b) return true;
        if (!a || !b) return false;
        if (a->kind != b->kind || a->value != b->value || a->name != b->name) return false;
        return equal(a->lhs.get(), b->lhs.get()) && equal(a->rhs.get(), b->rhs.get());
    }

    // Precedence levels: 1 add/sub, 2 mul/div, 3 unary minus, 4 pow, 5 atoms.
    void print(const detail::Node* n, int parent_prec, std::string& out) const {
        using detail::NodeKind;
        auto paren = [&](int prec, auto&& body) {
            if (prec < parent_prec) out += '(';
            body();
            if (prec < parent_prec) out += ')';
        };
        switch (n->kind) {
        case NodeKind::Const: {
            std::ostringstream s;
            s.precision(17);
            s << n->value;
            std::string txt = s.str();
            if (n->value < 0.0) { out += '('; out += txt; out += ')'; }
            else out += txt;
            break;
        }
        case NodeKind::Var: out += var_; break;
        case NodeKind::Neg:
            paren(3, [&] { out += '-'; print(n->lhs.get(), 4, out); });
            break;
        case NodeKind::Add:
            paren(1, [&] { print(n->lhs.get(), 1, out); out += '+'; print(n->rhs.get(), 2, out); });
            break;
        case NodeKind::Sub:
            paren(1, [&] { print(n->lhs.get(), 1, out); out += '-'; print(n->rhs.get(), 2, out); });
            break;
        case NodeKind::Mul:
            paren(2, [&] { print(n->lhs.get(), 2, out); out += '*'; print(n->rhs.get(), 3, out); });
            break;
        case NodeKind::Div:
            paren(2, [&] { print(n->lhs.get(), 2, out); out += '/'; print(n->rhs.get(), 3, out); });
            break;
        case NodeKind::Pow:
            // right-associative: left operand needs strictly higher precedence
            paren(4, [&] { print(n->lhs.get(), 5, out); out += '^'; print(n->rhs.get(), 4, out); });
            break;
        case NodeKind::Call:
            out += n->name;
            out += '(';
            print(n->lhs.get(), 0, out);
            out += ')';
            break;
        }
    }

    friend class Parser;
};

/// Recursive-descent parser over the grammar documented in docs/GRAMMAR.md.
class Parser {
public:
    Parser(const std::string& src, const std::string& var) : src_(src), var_(var) {}

    detail::NodePtr parse() {
        skip_ws();
        if (pos_ >= src_.size()) throw ParseError("empty expression", 0);
        auto e = parse_sum();
        skip_ws();
        if (pos_ < src_.size())
            throw ParseError("unexpected character '" + std::string(1, src_[pos_]) + "'", pos_);
        return e;
    }

private:
    const std::string& src_;
    const std::string& var_;
    size_t pos_ = 0;

    void skip_ws() { while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_; }

    bool accept(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) { ++pos_; return true; }
        return false;
    }

    detail::NodePtr parse_sum() {
        auto e = parse_term();
        for (;;) {
            if (accept('+')) e = detail::make_binary(detail::NodeKind::Add, e, parse_term());
            else if (accept('-')) e = detail::make_binary(detail::NodeKind::Sub, e, parse_term());
            else return e;
        }
    }

    detail::NodePtr parse_term() {
        auto e = parse_factor();
        for (;;) {
            if (accept('*')) e = detail::make_binary(detail::NodeKind::Mul, e, parse_factor());
            else if (accept('/')) e = detail::make_binary(detail::NodeKind::Div, e, parse_factor());
            else return e;
        }
    }

    // unary minus binds looser than ^, so -x^2 parses as -(x^2); a negated
    // literal folds to a constant so printing round-trips structurally
    detail::NodePtr parse_factor() {
        if (accept('-')) {
            auto inner = parse_factor();
            if (inner->kind == detail::NodeKind::Const)
                return detail::make_const(-inner->value);
            return detail::make_unary(detail::NodeKind::Neg, inner);
        }
        return parse_power();
    }

    detail::NodePtr parse_power() {
        auto base = parse_atom();
        if (accept('^'))
            return detail::make_binary(detail::NodeKind::Pow, base, parse_factor());
        return base;
    }

    detail::NodePtr parse_atom() {
        skip_ws();
        if (pos_ >= src_.size()) throw ParseError("unexpected end of input", pos_);
        char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_ident();
        if (c == '(') {
            ++pos_;
            auto e = parse_sum();
            if (!accept(')')) throw ParseError("expected ')'", pos_);
            return e;
        }
        throw ParseError("unexpected character '" + std::string(1, c) + "'", pos_);
    }

    detail::NodePtr parse_number() {
        size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.'))
            ++pos_;
        // exponent part: 1e-3, 2.5E+10
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            size_t p = pos_ + 1;
            if (p < src_.size() && (src_[p] == '+' || src_[p] == '-')) ++p;
            if (p < src_.size() && std::isdigit(static_cast<unsigned char>(src_[p]))) {
                ++p;
                while (p < src_.size() && std::isdigit(static_cast<unsigned char>(src_[p]))) ++p;
                pos_ = p;
            }
        }
        std::string txt = src_.substr(start, pos_ - start);
        try {
            size_t used = 0;
            double v = std::stod(txt, &used);
            if (used != txt.size()) throw ParseError("malformed number '" + txt + "'", start);
            return detail::make_const(v);
        } catch (const std::invalid_argument&) {
            throw ParseError("malformed number '" + txt + "'", start);
        }
    }

    detail::NodePtr parse_ident() {
        size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
            ++pos_;
        std::string name = src_.substr(start, pos_ - start);
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == '(') {
            static const char* fns[] = {"sin", "cos", "tan", "sinh", "cosh", "tanh",
                                        "exp", "ln", "sqrt", "abs"};
            bool known = false;
            for (auto* f : fns) known = known || name == f;
            if (!known) throw ParseError("unknown function '" + name + "'", start);
            ++pos_;
            auto arg = parse_sum();
            if (accept(',')) throw ParseError("function '" + name + "' takes one argument", pos_ - 1);
            if (!accept(')')) throw ParseError("expected ')'", pos_);
            return detail::make_unary(detail::NodeKind::Call, arg, name);
        }
        if (name == "pi") return detail::make_const(M_PI);
        if (name == "e") return detail::make_const(M_E);
        if (name == var_) return detail::make_unary(detail::NodeKind::Var, nullptr);
        throw ParseError("unknown identifier '" + name + "' (variable is '" + var_ + "')", start);
    }
};

inline Expression Expression::parse(const std::string& source, const std::string& variable_name) {
    Parser p(source, variable_name);
    return Expression(p.parse(), variable_name);
}

}  // namespace lw
