#include "k3fib/expr.hpp"

#include <algorithm>
#include <cctype>

namespace k3fib {

namespace {

class Parser {
public:
    explicit Parser(std::string_view s) : s_(s) {}

    ExprPtr parse() {
        ExprPtr e = sum();
        skip();
        if (pos_ != s_.size()) throw ParseError("unexpected '" + std::string(1, s_[pos_]) + "'", pos_);
        return e;
    }

private:
    static ExprPtr node(Expr::Kind k, std::vector<ExprPtr> args) {
        auto e = std::make_shared<Expr>();
        e->kind = k;
        e->args = std::move(args);
        return e;
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    ExprPtr sum() {
        ExprPtr lhs = product();
        for (;;) {
            if (eat('+'))
                lhs = node(Expr::Kind::Add, {lhs, product()});
            else if (eat('-'))
                lhs = node(Expr::Kind::Sub, {lhs, product()});
            else
                return lhs;
        }
    }

    ExprPtr product() {
        ExprPtr lhs = unary();
        for (;;) {
            if (eat('*'))
                lhs = node(Expr::Kind::Mul, {lhs, unary()});
            else if (eat('/'))
                lhs = node(Expr::Kind::Div, {lhs, unary()});
            else
                return lhs;
        }
    }

    ExprPtr unary() {
        if (eat('-')) return node(Expr::Kind::Neg, {unary()});
        if (eat('+')) return unary();
        return power();
    }

    ExprPtr power() {
        ExprPtr base = primary();
        if (!eat('^')) return base;
        bool paren = eat('(');
        bool neg = eat('-');
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) throw ParseError("expected integer exponent", pos_);
        if (pos_ - start > 6) throw ParseError("exponent too large", start);
        int e = std::stoi(std::string(s_.substr(start, pos_ - start)));
        if (paren && !eat(')')) throw ParseError("expected ')'", pos_);
        auto p = std::make_shared<Expr>();
        p->kind = Expr::Kind::Pow;
        p->exponent = neg ? -e : e;
        p->args = {base};
        return p;
    }

    ExprPtr primary() {
        skip();
        if (pos_ >= s_.size()) throw ParseError("unexpected end of expression", pos_);
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            ExprPtr e = sum();
            if (!eat(')')) throw ParseError("expected ')'", pos_);
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            auto e = std::make_shared<Expr>();
            e->kind = Expr::Kind::Number;
            e->value = Rational(mpz_class(std::string(s_.substr(start, pos_ - start))));
            return e;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' ||
                                        s_[pos_] == '\''))
                ++pos_;
            auto e = std::make_shared<Expr>();
            e->kind = Expr::Kind::Variable;
            e->name = std::string(s_.substr(start, pos_ - start));
            return e;
        }
        throw ParseError("unexpected '" + std::string(1, c) + "'", pos_);
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

void collect(const Expr& e, std::vector<std::string>& out) {
    if (e.kind == Expr::Kind::Variable && std::find(out.begin(), out.end(), e.name) == out.end())
        out.push_back(e.name);
    for (const auto& a : e.args) collect(*a, out);
}

}  // namespace

std::vector<std::string> Expr::variables() const {
    std::vector<std::string> out;
    collect(*this, out);
    return out;
}

ExprPtr parse_expr(std::string_view text) { return Parser(text).parse(); }

}  // namespace k3fib
