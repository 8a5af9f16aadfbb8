#include "k3fib/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace k3fib {

Rational::Rational(long num, long den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

Rational::Rational(mpz_class num, mpz_class den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

Rational::Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    auto valid_int = [](std::string_view v) {
        if (!v.empty() && (v[0] == '-' || v[0] == '+')) v.remove_prefix(1);
        if (v.empty()) return false;
        for (char c : v)
            if (!std::isdigit(static_cast<unsigned char>(c))) return false;
        return true;
    };
    auto slash = s.find('/');
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
        throw std::invalid_argument("malformed rational literal: " + std::string(text));
    if (num[0] == '+') num.erase(0, 1);
    if (mpz_class(den) == 0) throw std::invalid_argument("zero denominator in rational literal: " + std::string(text));
    return Rational(mpz_class(num), mpz_class(den));
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("rational division by zero");
    q_ /= o.q_;
    return *this;
}

Rational Rational::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero rational");
    return Rational(mpq_class(1 / q_));
}

Rational Rational::pow(int e) const {
    if (e < 0) return inverse().pow(-e);
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), q_.get_num_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(d.get_mpz_t(), q_.get_den_mpz_t(), static_cast<unsigned long>(e));
    return Rational(n, d);
}

std::string Rational::str() const { return q_.get_str(); }

}  // namespace k3fib
