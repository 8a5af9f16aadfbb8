#include "k3fib/nslattice.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "k3fib/expr.hpp"

namespace k3fib {

// Layout: F1..F3 = 0..2, G1..G3 = 3..5, E{i,j} = 6 + 3(i-1) + (j-1),
// E'{i,j} = 15 + 3(i-1) + (j-1).

namespace {

void check_range(int i) {
    if (i < 1 || i > 3) throw std::invalid_argument("curve subscript out of range: " + std::to_string(i));
}

}  // namespace

CurveClass CurveClass::F(int i) { return check_range(i), CurveClass(i - 1); }
CurveClass CurveClass::G(int i) { return check_range(i), CurveClass(2 + i); }
CurveClass CurveClass::E(int i, int j) { return check_range(i), check_range(j), CurveClass(6 + 3 * (i - 1) + j - 1); }
CurveClass CurveClass::Eprime(int i, int j) {
    return check_range(i), check_range(j), CurveClass(15 + 3 * (i - 1) + j - 1);
}

CurveClass CurveClass::from_index(int index) {
    if (index < 0 || index >= kNumCurves) throw std::invalid_argument("curve index out of range");
    return CurveClass(index);
}

const std::array<CurveClass, kNumCurves>& CurveClass::all() {
    static const auto list = [] {
        std::array<CurveClass, kNumCurves> a{};
        for (int i = 0; i < kNumCurves; ++i) a[i] = CurveClass(i);
        return a;
    }();
    return list;
}

std::string CurveClass::str() const {
    if (index_ < 3) return "F" + std::to_string(index_ + 1);
    if (index_ < 6) return "G" + std::to_string(index_ - 2);
    int k = index_ < 15 ? index_ - 6 : index_ - 15;
    std::string sub = "{" + std::to_string(k / 3 + 1) + "," + std::to_string(k % 3 + 1) + "}";
    return (index_ < 15 ? "E" : "E'") + sub;
}

namespace {

// Parses a curve name at s[pos]; advances pos.
CurveClass parse_curve_at(std::string_view s, std::size_t& pos) {
    auto fail = [&](const std::string& why) { throw ParseError(why, pos); };
    auto digit = [&]() {
        if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos]))) fail("expected a digit");
        return s[pos++] - '0';
    };
    auto skip_ws = [&] {
        while (pos < s.size() && s[pos] == ' ') ++pos;
    };
    if (pos >= s.size()) fail("expected a curve name");
    char head = s[pos++];
    if (head == 'F' || head == 'G') {
        if (pos < s.size() && s[pos] == '_') ++pos;
        int i = digit();
        if (i < 1 || i > 3) fail("curve subscript out of range");
        return head == 'F' ? CurveClass::F(i) : CurveClass::G(i);
    }
    if (head != 'E') fail(std::string("unknown curve '") + head + "'");
    bool prime = false;
    if (pos < s.size() && s[pos] == '\'') prime = true, ++pos;
    if (pos < s.size() && s[pos] == '_') ++pos;
    int i, j;
    if (pos < s.size() && s[pos] == '{') {
        ++pos;
        skip_ws();
        i = digit();
        skip_ws();
        if (pos >= s.size() || s[pos] != ',') fail("expected ','");
        ++pos;
        skip_ws();
        j = digit();
        skip_ws();
        if (pos >= s.size() || s[pos] != '}') fail("expected '}'");
        ++pos;
    } else {
        i = digit();
        j = digit();
    }
    if (pos < s.size() && s[pos] == '\'') {
        if (prime) fail("doubled prime");
        prime = true, ++pos;
    }
    if (i < 1 || i > 3 || j < 1 || j > 3) fail("curve subscript out of range");
    return prime ? CurveClass::Eprime(i, j) : CurveClass::E(i, j);
}

class DivisorParser {
public:
    explicit DivisorParser(std::string_view s) : s_(s) {}

    std::vector<DivisorTerm> run() {
        auto out = sum(1);
        skip();
        if (pos_ != s_.size()) throw ParseError("unexpected character", pos_);
        if (out.empty()) throw ParseError("empty divisor", 0);
        return out;
    }

private:
    std::vector<DivisorTerm> sum(long scale) {
        std::vector<DivisorTerm> out;
        skip();
        long sign = 1;
        if (peek('-')) sign = -1, ++pos_;
        else if (peek('+')) ++pos_;
        for (;;) {
            auto t = term(scale * sign);
            out.insert(out.end(), t.begin(), t.end());
            skip();
            if (peek('+')) sign = 1;
            else if (peek('-')) sign = -1;
            else break;
            ++pos_;
        }
        return out;
    }

    std::vector<DivisorTerm> term(long scale) {
        skip();
        long c = 1;
        if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            c = 0;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                if (c > 1000000) throw ParseError("coefficient too large", pos_);
                c = 10 * c + (s_[pos_++] - '0');
            }
            skip();
            if (peek('*')) ++pos_, skip();
        }
        if (peek('(')) {
            ++pos_;
            auto inner = sum(scale * c);
            skip();
            if (!peek(')')) throw ParseError("expected ')'", pos_);
            ++pos_;
            return inner;
        }
        return {{scale * c, parse_curve_at(s_, pos_)}};
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool peek(char c) const { return pos_ < s_.size() && s_[pos_] == c; }

    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace

CurveClass CurveClass::parse(std::string_view name) {
    std::size_t pos = 0;
    CurveClass c = parse_curve_at(name, pos);
    if (pos != name.size()) throw ParseError("trailing text after curve name", pos);
    return c;
}

const std::array<std::array<int, kNumCurves>, kNumCurves>& gram_matrix() {
    static const auto g = [] {
        std::array<std::array<int, kNumCurves>, kNumCurves> m{};
        auto set = [&](CurveClass a, CurveClass b, int v) { m[a.index()][b.index()] = m[b.index()][a.index()] = v; };
        for (int k = 0; k < kNumCurves; ++k) m[k][k] = -2;
        for (int i = 1; i <= 3; ++i)
            for (int j = 1; j <= 3; ++j) {
                set(CurveClass::E(i, j), CurveClass::Eprime(i, j), 1);
                set(CurveClass::F(i), CurveClass::Eprime(i, j), 1);
                set(CurveClass::G(j), CurveClass::E(i, j), 1);
            }
        return m;
    }();
    return g;
}

int gram_rank() {
    std::vector<std::vector<Rational>> a(kNumCurves, std::vector<Rational>(kNumCurves));
    for (int i = 0; i < kNumCurves; ++i)
        for (int j = 0; j < kNumCurves; ++j) a[i][j] = gram_matrix()[i][j];
    int rank = 0;
    for (int col = 0; col < kNumCurves && rank < kNumCurves; ++col) {
        int piv = -1;
        for (int r = rank; r < kNumCurves; ++r)
            if (!a[r][col].is_zero()) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(a[piv], a[rank]);
        for (int r = 0; r < kNumCurves; ++r) {
            if (r == rank || a[r][col].is_zero()) continue;
            Rational f = a[r][col] / a[rank][col];
            for (int c = col; c < kNumCurves; ++c) a[r][c] -= f * a[rank][c];
        }
        ++rank;
    }
    return rank;
}

long intersect(const DivisorClass& a, const DivisorClass& b) {
    const auto& g = gram_matrix();
    long s = 0;
    for (int i = 0; i < kNumCurves; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; j < kNumCurves; ++j) s += a[i] * g[i][j] * b[j];
    }
    return s;
}

namespace {

long dot_basis(const DivisorClass& d, int k) {
    const auto& g = gram_matrix();
    long s = 0;
    for (int i = 0; i < kNumCurves; ++i) s += d[i] * g[i][k];
    return s;
}

}  // namespace

bool numerically_trivial(const DivisorClass& d) {
    for (int k = 0; k < kNumCurves; ++k)
        if (dot_basis(d, k) != 0) return false;
    return true;
}

std::vector<DivisorTerm> parse_divisor_terms(std::string_view text) { return DivisorParser(text).run(); }

DivisorClass to_class(const std::vector<DivisorTerm>& terms) {
    DivisorClass d{};
    for (const auto& t : terms) d[t.curve.index()] += t.coeff;
    return d;
}

DivisorClass parse_divisor(std::string_view text) { return to_class(parse_divisor_terms(text)); }

namespace {

std::string join_terms(const std::vector<std::pair<long, std::string>>& items) {
    if (items.empty()) return "0";
    std::string out;
    for (const auto& [c, name] : items) {
        long a = c < 0 ? -c : c;
        if (out.empty()) out += c < 0 ? "-" : "";
        else out += c < 0 ? " - " : " + ";
        if (a != 1) out += std::to_string(a) + "*";
        out += name;
    }
    return out;
}

}  // namespace

std::string divisor_str(const DivisorClass& d) {
    std::vector<std::pair<long, std::string>> items;
    for (int i = 0; i < kNumCurves; ++i)
        if (d[i] != 0) items.emplace_back(d[i], CurveClass::from_index(i).str());
    return join_terms(items);
}

std::string terms_str(const std::vector<DivisorTerm>& terms) {
    std::vector<std::pair<long, std::string>> items;
    for (const auto& t : terms)
        if (t.coeff != 0) items.emplace_back(t.coeff, t.curve.str());
    return join_terms(items);
}

DivisorClass positive_part(const DivisorClass& d) {
    DivisorClass p{};
    for (int i = 0; i < kNumCurves; ++i) p[i] = std::max(d[i], 0L);
    return p;
}

DivisorClass negative_part(const DivisorClass& d) {
    DivisorClass p{};
    for (int i = 0; i < kNumCurves; ++i) p[i] = std::max(-d[i], 0L);
    return p;
}

FiberRecognition recognize_fiber(const DivisorClass& d) {
    using S = FiberRecognition::Status;
    std::vector<int> support;
    for (int i = 0; i < kNumCurves; ++i) {
        if (d[i] < 0) throw std::invalid_argument("recognize_fiber needs an effective divisor");
        if (d[i] > 0) support.push_back(i);
    }
    if (support.empty()) throw std::invalid_argument("recognize_fiber of the zero divisor");
    const auto& g = gram_matrix();
    FiberRecognition out;

    // Connectedness of the dual graph.
    std::set<int> seen{support[0]};
    std::vector<int> stack{support[0]};
    while (!stack.empty()) {
        int a = stack.back();
        stack.pop_back();
        for (int b : support)
            if (g[a][b] > 0 && seen.insert(b).second) stack.push_back(b);
    }
    if (seen.size() != support.size()) {
        out.status = S::NotConnected;
        for (int i : support)
            if (!seen.count(i)) out.offending.push_back(CurveClass::from_index(i));
        out.message = "support is not connected";
        return out;
    }

    for (int i : support)
        if (dot_basis(d, i) != 0) out.offending.push_back(CurveClass::from_index(i));
    if (!out.offending.empty()) {
        out.status = S::NotFiber;
        out.message = "D.C != 0 for some component C";
        for (const auto& c : out.offending) out.message += " " + c.str() + ":" + std::to_string(dot_basis(d, c.index()));
        return out;
    }

    long gcd = 0, maxm = 0;
    for (int i : support) gcd = std::gcd(gcd, d[i]), maxm = std::max(maxm, d[i]);
    if (gcd != 1) {
        out.status = S::NotPrimitive;
        out.message = "multiplicities share the factor " + std::to_string(gcd);
        return out;
    }

    // A connected effective divisor of (-2)-curves with D.C = 0 on every
    // component is an extended Dynkin diagram; the largest multiplicity
    // and the shape pin down the type.
    int n = static_cast<int>(support.size());
    int edges = 0;
    std::vector<int> degree(kNumCurves, 0);
    for (int a : support)
        for (int b : support)
            if (a < b && g[a][b] > 0) edges += g[a][b], degree[a] += g[a][b], degree[b] += g[a][b];
    bool cycle = n >= 2 && edges == n;
    bool tree = edges == n - 1;
    using F = KodairaType::Family;
    std::optional<KodairaType> t;
    if (maxm == 1 && cycle) t = KodairaType(F::I, n);
    else if (maxm == 2 && tree && n >= 5) t = KodairaType(F::IStar, n - 5);
    else if (maxm == 3 && tree && n == 7) t = KodairaType(F::IVStar);
    else if (maxm == 4 && tree && n == 8) t = KodairaType(F::IIIStar);
    else if (maxm == 6 && tree && n == 9) t = KodairaType(F::IIStar);
    if (!t) {
        out.status = S::NotExtendedDynkin;
        out.message = "no extended Dynkin diagram with " + std::to_string(n) + " nodes, " + std::to_string(edges) +
                      " edges and largest multiplicity " + std::to_string(maxm);
        return out;
    }
    out.type = t;
    out.message = t->str();
    return out;
}

namespace {

struct Edit {
    std::size_t term;
    std::optional<CurveClass> curve;
    std::optional<long> coeff;
};

std::vector<Edit> edits_for(const std::vector<DivisorTerm>& terms, std::size_t i) {
    std::vector<Edit> out;
    for (const auto& c : CurveClass::all())
        if (!(c == terms[i].curve)) out.push_back({i, c, std::nullopt});
    for (long k = 0; k <= 6; ++k)
        if (k != terms[i].coeff) out.push_back({i, std::nullopt, k});
    return out;
}

}  // namespace

std::vector<DivisorCorrection> minimal_corrections(const std::vector<DivisorTerm>& zero_terms, const DivisorClass& polar,
                                                   int max_edits) {
    auto polar_fiber = recognize_fiber(polar);
    if (!polar_fiber.ok()) return {};

    auto accept = [&](const std::vector<DivisorTerm>& terms) -> std::optional<KodairaType> {
        DivisorClass z = to_class(terms);
        DivisorClass diff{};
        for (int i = 0; i < kNumCurves; ++i) {
            if (z[i] < 0) return std::nullopt;
            diff[i] = z[i] - polar[i];
        }
        if (std::all_of(z.begin(), z.end(), [](long v) { return v == 0; })) return std::nullopt;
        if (!numerically_trivial(diff)) return std::nullopt;
        auto r = recognize_fiber(z);
        return r.ok() ? r.type : std::nullopt;
    };
    auto apply = [](std::vector<DivisorTerm> terms, const std::vector<Edit>& es) {
        for (const auto& e : es) {
            if (e.curve) terms[e.term].curve = *e.curve;
            if (e.coeff) terms[e.term].coeff = *e.coeff;
        }
        return terms;
    };
    auto describe = [&](const std::vector<Edit>& es) {
        std::vector<std::string> out;
        std::map<std::size_t, DivisorTerm> after;
        for (const auto& e : es) {
            auto& t = after.try_emplace(e.term, zero_terms[e.term]).first->second;
            if (e.curve) t.curve = *e.curve;
            if (e.coeff) t.coeff = *e.coeff;
        }
        for (const auto& [i, t] : after) {
            std::string before = terms_str({zero_terms[i]});
            int occurrence = 0, total = 0;
            for (std::size_t k = 0; k < zero_terms.size(); ++k)
                if (zero_terms[k] == zero_terms[i]) ++total, occurrence += k <= i;
            if (total > 1) before += " (occurrence " + std::to_string(occurrence) + " of " + std::to_string(total) + ")";
            out.push_back(before + " -> " + (t.coeff == 0 ? std::string("removed") : terms_str({t})));
        }
        return out;
    };

    std::vector<DivisorCorrection> found;
    std::vector<DivisorClass> classes;
    auto consider = [&](const std::vector<Edit>& es) {
        auto terms = apply(zero_terms, es);
        auto t = accept(terms);
        if (!t) return;
        DivisorClass c = to_class(terms);
        for (std::size_t k = 0; k < classes.size(); ++k)
            if (classes[k] == c) {
                // Same class reached by editing a repeated summand: keep the
                // later occurrence.
                found[k].edits = describe(es);
                found[k].terms = terms;
                return;
            }
        classes.push_back(c);
        std::vector<DivisorTerm> kept;
        for (const auto& term : terms)
            if (term.coeff != 0) kept.push_back(term);
        found.push_back({kept, describe(es), *t, *polar_fiber.type});
    };

    if (auto t = accept(zero_terms)) return {{zero_terms, {}, *t, *polar_fiber.type}};
    const std::size_t n = zero_terms.size();
    for (int depth = 1; depth <= max_edits && found.empty(); ++depth) {
        if (depth == 1) {
            for (std::size_t i = 0; i < n; ++i)
                for (const auto& e : edits_for(zero_terms, i)) consider({e});
        } else if (depth == 2) {
            for (std::size_t i = 0; i < n; ++i) {
                for (const auto& e1 : edits_for(zero_terms, i)) {
                    // Both a rename and a new coefficient on the same term.
                    if (e1.curve)
                        for (long k = 0; k <= 6; ++k)
                            if (k != zero_terms[i].coeff) consider({{i, e1.curve, k}});
                    for (std::size_t j = i + 1; j < n; ++j)
                        for (const auto& e2 : edits_for(zero_terms, j)) consider({e1, e2});
                }
            }
        } else {
            throw std::invalid_argument("minimal_corrections supports at most two edits");
        }
    }
    for (auto& f : found) {
        std::vector<DivisorTerm> kept;
        for (const auto& term : f.terms)
            if (term.coeff != 0) kept.push_back(term);
        f.terms = kept;
    }
    return found;
}

}  // namespace k3fib
