#include "qfalg/algebra.hpp"

#include <map>
#include <sstream>

#include "qfalg/witt.hpp"

namespace qfalg {

struct Algebra::Data {
    AlgebraKind kind;
    Field f;
    Elem a, b;
    bool split_pair = false;
    std::vector<std::string> words;
    std::vector<std::vector<Vec>> table;
};

namespace {

using Combo = std::map<std::string, Elem>;

void add_term(Combo& c, const std::string& w, const Elem& x) {
    if (x.is_zero()) return;
    auto it = c.find(w);
    if (it == c.end()) {
        c.emplace(w, x);
        return;
    }
    it->second += x;
    if (it->second.is_zero()) c.erase(it);
}

// Rewrite words in u, v with u^2 -> u + a, v^2 -> b, vu -> v - uv until every
// word is one of 1, u, v, uv.
Combo normalize(Combo c, const Elem& a, const Elem& b) {
    while (true) {
        bool changed = false;
        Combo next;
        for (const auto& [w, x] : c) {
            std::size_t pos = std::string::npos;
            std::string pat;
            for (const char* p : {"uu", "vv", "vu"}) {
                const std::size_t at = w.find(p);
                if (at != std::string::npos && at < pos) {
                    pos = at;
                    pat = p;
                }
            }
            if (pos == std::string::npos) {
                add_term(next, w, x);
                continue;
            }
            changed = true;
            const std::string l = w.substr(0, pos), r = w.substr(pos + 2);
            if (pat == "uu") {
                add_term(next, l + "u" + r, x);
                add_term(next, l + r, x * a);
            } else if (pat == "vv") {
                add_term(next, l + r, x * b);
            } else {
                add_term(next, l + "v" + r, x);
                add_term(next, l + "uv" + r, -x);
            }
        }
        c = std::move(next);
        if (!changed) return c;
    }
}

Vec to_coords(const Combo& c, const std::vector<std::string>& words, const Field& f) {
    Vec out = zero_vec(f, words.size());
    for (const auto& [w, x] : c) {
        std::size_t i = 0;
        while (i < words.size() && words[i] != w) ++i;
        if (i == words.size()) throw Error(ErrorKind::InternalInconsistency, "word " + w + " escaped the basis");
        out[i] = x;
    }
    return out;
}

Vec mul_coords(const Algebra::Data& d, const Vec& x, const Vec& y) {
    const std::size_t n = d.words.size();
    Vec out = zero_vec(d.f, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (x[i].is_zero()) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (y[j].is_zero()) continue;
            const Elem c = x[i] * y[j];
            const Vec& e = d.table[i][j];
            for (std::size_t k = 0; k < n; ++k)
                if (!e[k].is_zero()) out[k] += c * e[k];
        }
    }
    return out;
}

std::shared_ptr<Algebra::Data> build(AlgebraKind kind, const Field& f, const Elem& a, const Elem& b) {
    auto d = std::make_shared<Algebra::Data>(Algebra::Data{kind, f, a, b, false, {}, {}});
    switch (kind) {
        case AlgebraKind::Base: d->words = {""}; break;
        case AlgebraKind::Etale: d->words = {"", "u"}; break;
        case AlgebraKind::Quaternion: d->words = {"", "u", "v", "uv"}; break;
    }
    const std::size_t n = d->words.size();
    d->table.assign(n, std::vector<Vec>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Combo c;
            add_term(c, d->words[i] + d->words[j], f.one());
            d->table[i][j] = to_coords(normalize(std::move(c), a, b), d->words, f);
        }
    // Associativity on all basis triples.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                const Vec l = mul_coords(*d, d->table[i][j], unit_vec(f, n, k));
                const Vec r = mul_coords(*d, unit_vec(f, n, i), d->table[j][k]);
                if (l != r) throw Error(ErrorKind::InternalInconsistency, "derived multiplication table is not associative");
            }
    return d;
}

void check_etale_parameter(const Field& f, const Elem& a) {
    if (!(a.field() == f)) throw Error(ErrorKind::FieldMismatch, "parameter a is not in " + f.literal());
    if ((f.one() + f.from_int(4) * a).is_zero()) throw Error(ErrorKind::DegenerateParameters, "1 + 4a = 0");
}

}  // namespace

Algebra Algebra::base(const Field& f) { return Algebra(build(AlgebraKind::Base, f, f.zero(), f.zero())); }

Algebra Algebra::quaternion(const Field& f, const Elem& a, const Elem& b) {
    check_etale_parameter(f, a);
    if (!(b.field() == f)) throw Error(ErrorKind::FieldMismatch, "parameter b is not in " + f.literal());
    if (b.is_zero()) throw Error(ErrorKind::DegenerateParameters, "b = 0");
    return Algebra(build(AlgebraKind::Quaternion, f, a, b));
}

Algebra Algebra::etale(const Field& f, const Elem& a) {
    check_etale_parameter(f, a);
    return Algebra(build(AlgebraKind::Etale, f, a, f.zero()));
}

Algebra Algebra::split_etale(const Field& f) {
    auto d = build(AlgebraKind::Etale, f, f.zero(), f.zero());
    d->split_pair = true;
    return Algebra(std::move(d));
}

AlgebraKind Algebra::kind() const { return d_->kind; }
const Field& Algebra::field() const { return d_->f; }
std::size_t Algebra::dim() const { return d_->words.size(); }
const Elem& Algebra::a() const { return d_->a; }
const Elem& Algebra::b() const { return d_->b; }
bool Algebra::is_split_pair() const { return d_->split_pair; }
const Vec& Algebra::product(std::size_t i, std::size_t j) const { return d_->table.at(i).at(j); }

AlgElem Algebra::element(Vec coords) const { return AlgElem(*this, std::move(coords)); }
AlgElem Algebra::scalar(const Elem& c) const {
    Vec v = zero_vec(field(), dim());
    v[0] = c;
    return element(std::move(v));
}
AlgElem Algebra::zero() const { return element(zero_vec(field(), dim())); }
AlgElem Algebra::one() const { return scalar(field().one()); }
AlgElem Algebra::basis(std::size_t i) const { return element(unit_vec(field(), dim(), i)); }

std::string Algebra::literal() const {
    const std::string at = "@" + field().literal();
    switch (kind()) {
        case AlgebraKind::Base: return field().literal();
        case AlgebraKind::Etale:
            if (is_split_pair()) return "etale(split)" + at;
            return "etale(a=" + a().to_string() + ")" + at;
        case AlgebraKind::Quaternion: return "quat(a=" + a().to_string() + ",b=" + b().to_string() + ")" + at;
    }
    return "?";
}

std::string Algebra::basis_name(std::size_t i) const {
    static const char* names[] = {"1", "u", "v", "w"};
    return names[i];
}

bool Algebra::operator==(const Algebra& o) const {
    if (d_ == o.d_) return true;
    return d_->kind == o.d_->kind && d_->f == o.d_->f && d_->a == o.d_->a && d_->b == o.d_->b &&
           d_->split_pair == o.d_->split_pair;
}

AlgElem::AlgElem(Algebra owner, Vec coords) : owner_(std::move(owner)), c_(std::move(coords)) {
    if (c_.size() != owner_.dim()) throw Error(ErrorKind::InvalidArgument, "coordinate count does not match the algebra");
    for (const auto& x : c_)
        if (!(x.field() == owner_.field())) throw Error(ErrorKind::FieldMismatch, "coordinate outside the base field");
}

void AlgElem::check_owner(const AlgElem& o) const {
    if (owner_ != o.owner_) throw Error(ErrorKind::OwnerMismatch, owner_.literal() + " vs " + o.owner_.literal());
}

AlgElem AlgElem::operator+(const AlgElem& o) const {
    check_owner(o);
    Vec v = c_;
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += o.c_[i];
    return AlgElem(owner_, std::move(v));
}

AlgElem AlgElem::operator-(const AlgElem& o) const {
    check_owner(o);
    Vec v = c_;
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= o.c_[i];
    return AlgElem(owner_, std::move(v));
}

AlgElem AlgElem::operator-() const {
    Vec v = c_;
    for (auto& x : v) x = -x;
    return AlgElem(owner_, std::move(v));
}

AlgElem AlgElem::operator*(const AlgElem& o) const {
    check_owner(o);
    const std::size_t n = c_.size();
    Vec out = zero_vec(owner_.field(), n);
    for (std::size_t i = 0; i < n; ++i) {
        if (c_[i].is_zero()) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (o.c_[j].is_zero()) continue;
            const Elem c = c_[i] * o.c_[j];
            const Vec& e = owner_.product(i, j);
            for (std::size_t k = 0; k < n; ++k)
                if (!e[k].is_zero()) out[k] += c * e[k];
        }
    }
    return AlgElem(owner_, std::move(out));
}

AlgElem AlgElem::scaled(const Elem& c) const {
    Vec v = c_;
    for (auto& x : v) x *= c;
    return AlgElem(owner_, std::move(v));
}

bool AlgElem::operator==(const AlgElem& o) const { return owner_ == o.owner_ && c_ == o.c_; }

bool AlgElem::is_zero() const { return is_zero_vec(c_); }

bool AlgElem::is_scalar() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
        if (!c_[i].is_zero()) return false;
    return true;
}

std::string AlgElem::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        if (i == 0) {
            os << c_[i].to_string();
        } else if (c_[i].is_one()) {
            os << owner_.basis_name(i);
        } else {
            os << "(" << c_[i].to_string() << ")" << owner_.basis_name(i);
        }
    }
    if (first) os << "0";
    return os.str();
}

AlgElem mul(const AlgElem& x, const AlgElem& y) { return x * y; }

Elem trd(const AlgElem& x) {
    const Algebra& A = x.owner();
    Elem t = A.field().zero();
    for (std::size_t i = 0; i < A.dim(); ++i) {
        if (x.coords()[i].is_zero()) continue;
        // Trd(1) = 2; a basis element e outside F satisfies e^2 = Trd(e) e - Nrd(e).
        const Elem ti = i == 0 ? A.field().from_int(2) : A.product(i, i)[i];
        t += x.coords()[i] * ti;
    }
    return t;
}

AlgElem canonical_involution(const AlgElem& x) {
    if (x.owner().kind() == AlgebraKind::Base) return x;
    return x.owner().scalar(trd(x)) - x;
}

Elem nrd(const AlgElem& x) {
    const AlgElem n = canonical_involution(x) * x;
    if (!n.is_scalar()) throw Error(ErrorKind::InternalInconsistency, "reduced norm left the base field");
    return n.scalar_part();
}

Algebra make_quaternion(const Field& f, const Elem& a, const Elem& b) { return Algebra::quaternion(f, a, b); }
Algebra make_etale(const Field& f, const Elem& a) { return Algebra::etale(f, a); }
Algebra make_split_etale(const Field& f) { return Algebra::split_etale(f); }

QuadraticForm norm_form(const Algebra& A) {
    const Field& f = A.field();
    const std::size_t n = A.dim();
    Matrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = nrd(A.basis(i));
        for (std::size_t j = i + 1; j < n; ++j)
            m(i, j) = nrd(A.basis(i) + A.basis(j)) - nrd(A.basis(i)) - nrd(A.basis(j));
    }
    return QuadraticForm(f, std::move(m));
}

bool is_split(const Algebra& A, const OracleOptions& opt) {
    if (A.kind() == AlgebraKind::Base) return true;
    return is_hyperbolic(norm_form(A), opt);
}

bool is_division(const Algebra& A, const OracleOptions& opt) {
    if (A.kind() == AlgebraKind::Base) return true;
    const IsotropyResult r = isotropy_oracle(norm_form(A), opt);
    if (r.undecided()) throw Error(ErrorKind::OracleUndecided, "norm form isotropy: " + r.reason);
    return r.anisotropic();
}

}  // namespace qfalg
