#include "qfalg/grammar.hpp"

#include <cctype>

namespace qfalg {

namespace {

std::string position_text(std::size_t line, std::size_t col, const std::string& expected, const std::string& near) {
    return "line " + std::to_string(line) + ", col " + std::to_string(col) + ": expected " + expected +
           (near.empty() ? std::string(" at end of input") : " near '" + near + "'");
}

}  // namespace

SyntaxError::SyntaxError(std::size_t line, std::size_t col, const std::string& expected, const std::string& near)
    : Error(ErrorKind::SyntaxError, position_text(line, col, expected, near)), line_(line), col_(col), expected_(expected) {}

namespace {

class Cursor {
public:
    Cursor(std::string_view text, std::size_t base = 0, std::string_view full = {})
        : s_(text), base_(base), full_(full.empty() ? text : full) {}

    void ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool at_end() {
        ws();
        return pos_ >= s_.size();
    }
    char peek() {
        ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }
    bool eat(char c) {
        if (peek() != c) return false;
        ++pos_;
        return true;
    }
    void expect(char c) {
        if (!eat(c)) fail(std::string("'") + c + "'");
    }
    bool eat_word(std::string_view w) {
        ws();
        if (s_.substr(pos_, w.size()) != w) return false;
        const std::size_t end = pos_ + w.size();
        if (end < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[end])) || s_[end] == '_')) return false;
        pos_ = end;
        return true;
    }
    std::string ident() {
        ws();
        const std::size_t start = pos_;
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
        return std::string(s_.substr(start, pos_ - start));
    }
    std::uint64_t uint() {
        ws();
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_ || pos_ - start > 18) {
            pos_ = start;
            fail("a non-negative integer");
        }
        return std::stoull(std::string(s_.substr(start, pos_ - start)));
    }
    // Text up to the next ',', ';', ')' or ']' at bracket depth 0.
    std::pair<std::string, std::size_t> raw_item() {
        ws();
        const std::size_t start = pos_;
        int depth = 0;
        while (pos_ < s_.size()) {
            const char c = s_[pos_];
            if (c == '(' || c == '[') ++depth;
            else if (c == ')' || c == ']') {
                if (depth == 0) break;
                --depth;
            } else if ((c == ',' || c == ';') && depth == 0) break;
            ++pos_;
        }
        std::string item(s_.substr(start, pos_ - start));
        while (!item.empty() && std::isspace(static_cast<unsigned char>(item.back()))) item.pop_back();
        if (item.empty()) fail("a value");
        return {item, base_ + start};
    }
    std::size_t offset() const { return base_ + pos_; }
    std::string_view full() const { return full_; }

    [[noreturn]] void fail(const std::string& expected) const { fail_at(base_ + pos_, expected); }
    [[noreturn]] void fail_at(std::size_t off, const std::string& expected) const {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i < off && i < full_.size(); ++i) {
            if (full_[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        const std::string near(full_.substr(std::min(off, full_.size()), 12));
        throw SyntaxError(line, col, expected, near);
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;
    std::size_t base_;
    std::string_view full_;
};

using RawItem = std::pair<std::string, std::size_t>;

// ---------------------------------------------------------------------------
// Elements

class ElementParser {
public:
    ElementParser(const Field& f, std::string_view text, std::size_t base, std::string_view full)
        : f_(f), c_(text, base, full) {}

    Elem parse() {
        Elem v = expr();
        if (!c_.at_end()) c_.fail("an operator or end of element");
        return v;
    }

private:
    Elem expr() {
        bool neg = false;
        if (c_.eat('-')) neg = true;
        else c_.eat('+');
        Elem acc = term();
        if (neg) acc = -acc;
        for (;;) {
            if (c_.eat('+')) acc += term();
            else if (c_.eat('-')) acc -= term();
            else return acc;
        }
    }
    Elem term() {
        Elem acc = power();
        for (;;) {
            const char c = c_.peek();
            if (c_.eat('*')) {
                acc *= power();
            } else if (c_.eat('/')) {
                const std::size_t at = c_.offset();
                const Elem d = power();
                if (d.is_zero()) c_.fail_at(at, "a nonzero divisor");
                acc = acc / d;
            } else if (c == 't' || c == '(') {
                acc *= power();
            } else {
                return acc;
            }
        }
    }
    Elem power() {
        Elem b = primary();
        if (!c_.eat('^')) return b;
        const bool neg = c_.eat('-');
        const std::size_t at = c_.offset();
        const auto e = static_cast<std::int64_t>(c_.uint());
        if (neg && b.is_zero()) c_.fail_at(at, "a nonzero base for a negative exponent");
        return b.pow(neg ? -e : e);
    }
    Elem primary() {
        const char c = c_.peek();
        if (c == '(') {
            c_.expect('(');
            Elem v = expr();
            c_.expect(')');
            return v;
        }
        if (c == 't') {
            const std::size_t at = c_.offset();
            c_.ident() == "t" ? void() : c_.fail_at(at, "an element");
            if (f_.is_rationals() || (f_.is_finite() && f_.degree() == 1))
                c_.fail_at(at, "an element of " + f_.literal() + " (it has no generator t)");
            return f_.gen();
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string digits;
            while (std::isdigit(static_cast<unsigned char>(c_.peek())) && digits.size() < 4096) {
                digits.push_back(c_.peek());
                c_.eat(c_.peek());
                // Stop at whitespace: "1 2" is not one number.
                if (!std::isdigit(static_cast<unsigned char>(peek_raw()))) break;
            }
            return f_.from_rational(mpq_class(mpz_class(digits)));
        }
        c_.fail("an integer, t, or '('");
    }
    char peek_raw() {
        const std::size_t off = c_.offset();
        const std::string_view full = c_.full();
        return off < full.size() ? full[off] : '\0';
    }

    const Field& f_;
    Cursor c_;
};

Elem element_at(const Field& f, const RawItem& item, std::string_view full) {
    return ElementParser(f, item.first, item.second, full).parse();
}

std::vector<Elem> elements_at(const Field& f, const std::vector<RawItem>& items, std::string_view full) {
    std::vector<Elem> out;
    for (const auto& it : items) out.push_back(element_at(f, it, full));
    return out;
}

// ---------------------------------------------------------------------------
// Fields and algebras

Field field(Cursor& c) {
    const std::size_t at = c.offset();
    const std::string id = c.ident();
    if (id == "QQ") return Field::rationals();
    if (id == "GF") {
        c.expect('(');
        const std::size_t qat = c.offset();
        const std::uint64_t q = c.uint();
        c.expect(')');
        std::uint64_t p = 0;
        for (std::uint64_t d = 2; d * d <= q && !p; ++d)
            if (q % d == 0) p = d;
        if (!p) p = q;
        std::uint32_t k = 0;
        std::uint64_t r = q;
        while (p >= 2 && r % p == 0) {
            r /= p;
            ++k;
        }
        if (q < 2 || r != 1 || q > (1u << 24)) c.fail_at(qat, "a prime power q <= 2^24");
        return Field::finite(static_cast<std::uint32_t>(p), k);
    }
    if (id == "Fp_t") {
        c.expect('(');
        const std::size_t pat = c.offset();
        const std::uint64_t p = c.uint();
        c.expect(')');
        if (p > 65521 || !is_prime_u32(static_cast<std::uint32_t>(p))) c.fail_at(pat, "a prime p");
        return Field::rational_functions(static_cast<std::uint32_t>(p));
    }
    c.fail_at(at, "a field literal QQ, GF(q) or Fp_t(p)");
}

Field at_field(Cursor& c) {
    c.expect('@');
    return field(c);
}

std::vector<RawItem> item_list(Cursor& c) {
    std::vector<RawItem> items;
    if (c.peek() == ')' || c.peek() == ';') return items;
    items.push_back(c.raw_item());
    while (c.eat(',')) items.push_back(c.raw_item());
    return items;
}

// Rows separated by ';' inside an already opened parenthesis.
std::vector<std::vector<RawItem>> row_list(Cursor& c) {
    std::vector<std::vector<RawItem>> rows{item_list(c)};
    while (c.eat(';')) rows.push_back(item_list(c));
    return rows;
}

Matrix square_matrix(Cursor& c, const Field& f, const std::vector<std::vector<RawItem>>& rows, std::size_t at) {
    const std::size_t n = rows.size();
    Matrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != n) c.fail_at(at, "a square matrix (" + std::to_string(n) + " entries per row)");
        for (std::size_t j = 0; j < n; ++j) m(i, j) = element_at(f, rows[i][j], c.full());
    }
    return m;
}

Algebra algebra(Cursor& c) {
    Cursor probe = c;
    const std::string id = probe.ident();
    if (id == "quat") {
        c.ident();
        c.expect('(');
        if (!c.eat_word("a")) c.fail("a=");
        c.expect('=');
        const RawItem a = c.raw_item();
        if (c.peek() != ',') {
            // A stray token in a= swallows b=; parse a against the suffix field to point at it.
            Cursor probe = c;
            if (probe.eat(')') && probe.peek() == '@') {
                std::optional<Field> f;
                try {
                    f = at_field(probe);
                } catch (const SyntaxError&) {
                }
                if (f) element_at(*f, a, c.full());
            }
        }
        c.expect(',');
        if (!c.eat_word("b")) c.fail("b=");
        c.expect('=');
        const RawItem b = c.raw_item();
        c.expect(')');
        const Field f = at_field(c);
        return make_quaternion(f, element_at(f, a, c.full()), element_at(f, b, c.full()));
    }
    if (id == "etale") {
        c.ident();
        c.expect('(');
        if (c.eat_word("split")) {
            c.expect(')');
            return make_split_etale(at_field(c));
        }
        if (!c.eat_word("a")) c.fail("a= or split");
        c.expect('=');
        const RawItem a = c.raw_item();
        c.expect(')');
        const Field f = at_field(c);
        return make_etale(f, element_at(f, a, c.full()));
    }
    return Algebra::base(field(c));
}

// ---------------------------------------------------------------------------
// Forms

BilinearForm bilinear(Cursor& c, const Field* ctx);
QuadraticForm quadratic(Cursor& c);

// '@F' suffix, optional when the field is given by context.
Field suffix_field(Cursor& c, const Field* ctx) {
    if (ctx && c.peek() != '@') return *ctx;
    const std::size_t at = c.offset();
    Field f = at_field(c);
    if (ctx && f != *ctx) c.fail_at(at, ctx->literal());
    return f;
}

BilinearForm bilinear(Cursor& c, const Field* ctx) {
    const std::size_t at = c.offset();
    const std::string id = c.ident();
    c.expect('(');
    if (id == "bdiag" || id == "diag" || id == "pfister_b") {
        const auto items = item_list(c);
        c.expect(')');
        const Field f = suffix_field(c, ctx);
        const auto v = elements_at(f, items, c.full());
        return id == "pfister_b" ? bilinear_pfister(f, v) : diagonal_bilinear(f, v);
    }
    if (id == "bmat") {
        const auto rows = row_list(c);
        c.expect(')');
        const Field f = suffix_field(c, ctx);
        return BilinearForm(f, square_matrix(c, f, rows, at));
    }
    if (id == "tensor" || id == "sum") {
        const BilinearForm b1 = bilinear(c, ctx);
        c.expect(',');
        const BilinearForm b2 = bilinear(c, ctx);
        c.expect(')');
        return id == "tensor" ? tensor_bb(b1, b2) : orthogonal_sum(b1, b2);
    }
    if (id == "scale") {
        const RawItem s = c.raw_item();
        c.expect(',');
        const BilinearForm b = bilinear(c, ctx);
        c.expect(')');
        return scale(element_at(b.base(), s, c.full()), b);
    }
    c.fail_at(at, "a bilinear form literal (bdiag, bmat, pfister_b, tensor, sum, scale)");
}

QuadraticForm quadratic(Cursor& c) {
    const std::size_t at = c.offset();
    const std::string id = c.ident();
    c.expect('(');
    if (id == "diag" || id == "pfister_b") {
        const auto items = item_list(c);
        c.expect(')');
        const Field f = at_field(c);
        const auto v = elements_at(f, items, c.full());
        return id == "diag" ? diagonal_quadratic(f, v) : diagonal_part(bilinear_pfister(f, v));
    }
    if (id == "qmat") {
        const auto rows = row_list(c);
        c.expect(')');
        const Field f = at_field(c);
        return QuadraticForm(f, square_matrix(c, f, rows, at));
    }
    if (id == "binq") {
        const RawItem a = c.raw_item();
        c.expect(',');
        const RawItem b = c.raw_item();
        c.expect(')');
        const Field f = at_field(c);
        return binary_quadratic(f, element_at(f, a, c.full()), element_at(f, b, c.full()));
    }
    if (id == "qpfister") {
        const RawItem a = c.raw_item();
        std::vector<RawItem> slots;
        if (c.eat(';')) slots = item_list(c);
        c.expect(')');
        const Field f = at_field(c);
        return quadratic_pfister(f, element_at(f, a, c.full()), elements_at(f, slots, c.full()));
    }
    if (id == "hyp") {
        const std::uint64_t k = c.uint();
        c.expect(')');
        return hyperbolic_form(at_field(c), k);
    }
    if (id == "norm") {
        const Algebra A = algebra(c);
        c.expect(')');
        return norm_form(A);
    }
    if (id == "tensor") {
        const BilinearForm b = bilinear(c, nullptr);
        c.expect(',');
        const QuadraticForm q = quadratic(c);
        c.expect(')');
        return tensor(b, q);
    }
    if (id == "sum") {
        const QuadraticForm q1 = quadratic(c);
        c.expect(',');
        const QuadraticForm q2 = quadratic(c);
        c.expect(')');
        return orthogonal_sum(q1, q2);
    }
    if (id == "scale") {
        const RawItem s = c.raw_item();
        c.expect(',');
        const QuadraticForm q = quadratic(c);
        c.expect(')');
        return scale(element_at(q.base(), s, c.full()), q);
    }
    c.fail_at(at, "a quadratic form literal (diag, qmat, binq, qpfister, hyp, pfister_b, norm, tensor, sum, scale)");
}

// ---------------------------------------------------------------------------
// Hermitian forms

struct HermBody {
    std::vector<std::vector<RawItem>> rows;  // hmat rows of bracketed coordinate items
    std::vector<RawItem> diag;
    std::uint64_t half = 0;
    std::optional<RawItem> lambda;
};

// Trailing ';lambda=c' segment.
bool lambda_segment(Cursor& c, HermBody& body) {
    Cursor probe = c;
    if (!probe.eat(';') || !probe.eat_word("lambda")) return false;
    c = probe;
    c.expect('=');
    body.lambda = c.raw_item();
    return true;
}

HermitianForm hermitian(Cursor& c) {
    const std::size_t at = c.offset();
    const std::string id = c.ident();
    c.expect('(');
    if (id == "sum") {
        const HermitianForm h1 = hermitian(c);
        c.expect(',');
        const HermitianForm h2 = hermitian(c);
        c.expect(')');
        return orthogonal_sum(h1, h2);
    }
    if (id == "scale") {
        const RawItem s = c.raw_item();
        c.expect(',');
        const HermitianForm h = hermitian(c);
        c.expect(')');
        return scale(element_at(h.algebra().field(), s, c.full()), h);
    }
    HermBody body;
    if (id == "diag") {
        body.diag = item_list(c);
        lambda_segment(c, body);
    } else if (id == "hmat") {
        body.rows.push_back(item_list(c));
        while (!lambda_segment(c, body) && c.eat(';')) body.rows.push_back(item_list(c));
    } else if (id == "hyp") {
        body.half = c.uint();
        lambda_segment(c, body);
    } else {
        c.fail_at(at, "a hermitian form literal (diag, hmat, hyp, sum, scale)");
    }
    c.expect(')');
    c.expect('@');
    const Algebra D = algebra(c);
    const Field& f = D.field();
    const Elem lambda = body.lambda ? element_at(f, *body.lambda, c.full()) : f.one();
    if (id == "hyp") return hyperbolic_h(D, body.half, lambda);
    std::vector<AlgVec> gram;
    if (id == "diag") {
        const std::size_t n = body.diag.size();
        gram.assign(n, AlgVec(n, D.zero()));
        for (std::size_t i = 0; i < n; ++i) {
            const Elem e = element_at(f, body.diag[i], c.full());
            if (e.is_zero()) throw Error(ErrorKind::ZeroEntry, "diagonal entry " + std::to_string(i) + " is 0");
            gram[i][i] = D.scalar(e);
        }
    } else {
        const std::size_t n = body.rows.size();
        for (const auto& row : body.rows) {
            if (row.size() != n) c.fail_at(at, "a square matrix of algebra elements");
            AlgVec out;
            for (const auto& item : row) {
                const std::string& s = item.first;
                if (s.size() < 2 || s.front() != '[' || s.back() != ']')
                    c.fail_at(item.second, "a coordinate vector [c0,..]");
                Cursor inner(std::string_view(s).substr(1, s.size() - 2), item.second + 1, c.full());
                const auto coords = item_list(inner);
                if (!inner.at_end()) inner.fail("',' or ']'");
                if (coords.size() != D.dim())
                    c.fail_at(item.second, std::to_string(D.dim()) + " coordinates for " + D.literal());
                out.push_back(D.element(elements_at(f, coords, c.full())));
            }
            gram.push_back(std::move(out));
        }
    }
    return HermitianForm(D, lambda, std::move(gram));
}

template <class T, class Fn>
T whole(std::string_view text, Fn fn) {
    Cursor c(text);
    T v = fn(c);
    if (!c.at_end()) c.fail("end of literal");
    return v;
}

}  // namespace

Field parse_field(std::string_view text) { return whole<Field>(text, [](Cursor& c) { return field(c); }); }

Elem parse_element(const Field& f, std::string_view text) {
    return ElementParser(f, text, 0, text).parse();
}

QuadraticForm parse_quadratic(std::string_view text) {
    return whole<QuadraticForm>(text, [](Cursor& c) { return quadratic(c); });
}

BilinearForm parse_bilinear(std::string_view text) {
    return whole<BilinearForm>(text, [](Cursor& c) { return bilinear(c, nullptr); });
}

BilinearForm parse_bilinear_over(const Field& f, std::string_view text) {
    return whole<BilinearForm>(text, [&](Cursor& c) { return bilinear(c, &f); });
}

Algebra parse_algebra(std::string_view text) { return whole<Algebra>(text, [](Cursor& c) { return algebra(c); }); }

HermitianForm parse_hermitian(std::string_view text) {
    return whole<HermitianForm>(text, [](Cursor& c) { return hermitian(c); });
}

}  // namespace qfalg
