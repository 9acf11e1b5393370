#include "qfalg/field.hpp"

#include <map>
#include <mutex>
#include <sstream>
#include <tuple>

namespace qfalg {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::DivisionByZero: return "DivisionByZero";
        case ErrorKind::UnsupportedField: return "UnsupportedField";
        case ErrorKind::FieldMismatch: return "FieldMismatch";
        case ErrorKind::SingularForm: return "SingularForm";
        case ErrorKind::ZeroEntry: return "ZeroEntry";
        case ErrorKind::ZeroSlot: return "ZeroSlot";
        case ErrorKind::ZeroScalar: return "ZeroScalar";
        case ErrorKind::SingularParameters: return "SingularParameters";
        case ErrorKind::DegenerateParameters: return "DegenerateParameters";
        case ErrorKind::OwnerMismatch: return "OwnerMismatch";
        case ErrorKind::OracleUndecided: return "OracleUndecided";
        case ErrorKind::NotPowerOfTwoDim: return "NotPowerOfTwoDim";
        case ErrorKind::NotEven: return "NotEven";
        case ErrorKind::Degenerate: return "Degenerate";
        case ErrorKind::SignatureMismatch: return "SignatureMismatch";
        case ErrorKind::UnsupportedVariant: return "UnsupportedVariant";
        case ErrorKind::InternalInconsistency: return "InternalInconsistency";
        case ErrorKind::HypothesisViolation: return "HypothesisViolation";
        case ErrorKind::SyntaxError: return "SyntaxError";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

namespace detail {

struct FieldData {
    FieldKind kind = FieldKind::Rationals;
    std::uint32_t p = 0;
    std::uint32_t k = 1;
    std::uint64_t q = 0;
    PolyFp modulus;
    std::vector<std::uint32_t> exp_table;  // exp_table[i] = g^i, i in [0, q-1)
    std::vector<std::uint32_t> log_table;  // log_table[x] for x != 0
    std::vector<std::uint64_t> powers;     // p^i
    std::vector<std::uint16_t> add_table;  // q*q when q is small

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
        if (p == 2) return a ^ b;
        if (k == 1) return static_cast<std::uint32_t>((a + b) % p);
        if (!add_table.empty()) return add_table[std::uint64_t(a) * q + b];
        std::uint32_t r = 0;
        for (std::uint32_t i = 0; i < k; ++i) {
            const std::uint32_t da = a % p, db = b % p;
            a /= p;
            b /= p;
            r += static_cast<std::uint32_t>(((da + db) % p) * powers[i]);
        }
        return r;
    }
    std::uint32_t neg(std::uint32_t a) const {
        if (p == 2) return a;
        if (k == 1) return (p - a) % p;
        std::uint32_t r = 0;
        for (std::uint32_t i = 0; i < k; ++i) {
            const std::uint32_t da = a % p;
            a /= p;
            r += static_cast<std::uint32_t>(((p - da) % p) * powers[i]);
        }
        return r;
    }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        if (!a || !b) return 0;
        if (k == 1) return static_cast<std::uint32_t>(std::uint64_t(a) * b % p);
        std::uint64_t s = std::uint64_t(log_table[a]) + log_table[b];
        if (s >= q - 1) s -= q - 1;
        return exp_table[s];
    }
    std::uint32_t inv(std::uint32_t a) const {
        if (!a) throw Error(ErrorKind::DivisionByZero, "inverse of zero in " + std::to_string(q));
        if (k == 1) return mod_inv(a, p);
        const std::uint32_t l = log_table[a];
        return exp_table[l == 0 ? 0 : (q - 1 - l)];
    }

    PolyFp to_poly(std::uint32_t x) const {
        std::vector<std::uint32_t> c(k, 0);
        for (std::uint32_t i = 0; i < k; ++i) {
            c[i] = x % p;
            x /= p;
        }
        return PolyFp(p, std::move(c));
    }
    std::uint32_t from_poly(const PolyFp& f) const {
        std::uint64_t r = 0;
        for (std::uint32_t i = 0; i < k; ++i) r += f.coeff(i) * powers[i];
        return static_cast<std::uint32_t>(r);
    }
};

}  // namespace detail

namespace {

using detail::FieldData;

std::shared_ptr<const FieldData> build_finite(const PolyFp& modulus) {
    auto d = std::make_shared<FieldData>();
    d->kind = FieldKind::Finite;
    d->p = modulus.prime();
    d->k = static_cast<std::uint32_t>(modulus.degree());
    d->modulus = modulus;
    d->q = 1;
    for (std::uint32_t i = 0; i < d->k; ++i) {
        d->powers.push_back(d->q);
        d->q *= d->p;
    }
    if (d->q > (1u << 22)) throw Error(ErrorKind::UnsupportedField, "finite field too large");
    if (d->k > 1) {
        // Find a primitive element and tabulate its powers.
        const std::uint64_t order = d->q - 1;
        std::vector<std::uint64_t> factors;
        {
            std::uint64_t n = order;
            for (std::uint64_t f = 2; f * f <= n; ++f) {
                if (n % f) continue;
                factors.push_back(f);
                while (n % f == 0) n /= f;
            }
            if (n > 1) factors.push_back(n);
        }
        for (std::uint32_t g = 1; g < d->q; ++g) {
            const PolyFp gp = d->to_poly(g);
            bool primitive = true;
            for (auto r : factors)
                if (pow_mod(gp, order / r, modulus).is_one()) {
                    primitive = false;
                    break;
                }
            if (!primitive) continue;
            d->exp_table.assign(order, 0);
            d->log_table.assign(d->q, 0);
            PolyFp x = PolyFp::constant(d->p, 1);
            for (std::uint64_t i = 0; i < order; ++i) {
                const std::uint32_t idx = d->from_poly(x);
                d->exp_table[i] = idx;
                d->log_table[idx] = static_cast<std::uint32_t>(i);
                x = (x * gp) % modulus;
            }
            break;
        }
        if (d->p != 2 && d->q <= 729) {
            d->add_table.assign(d->q * d->q, 0);
            FieldData tmp = *d;
            tmp.add_table.clear();
            for (std::uint32_t a = 0; a < d->q; ++a)
                for (std::uint32_t b = 0; b < d->q; ++b)
                    d->add_table[std::uint64_t(a) * d->q + b] = static_cast<std::uint16_t>(tmp.add(a, b));
        }
    }
    return d;
}

std::mutex& cache_mutex() {
    static std::mutex m;
    return m;
}

std::map<std::pair<std::uint32_t, std::vector<std::uint32_t>>, std::shared_ptr<const FieldData>>& finite_cache() {
    static std::map<std::pair<std::uint32_t, std::vector<std::uint32_t>>, std::shared_ptr<const FieldData>> c;
    return c;
}

RatFunc normalize(PolyFp num, PolyFp den) {
    if (den.is_zero()) throw Error(ErrorKind::DivisionByZero, "rational function with zero denominator");
    const std::uint32_t p = den.prime();
    if (num.is_zero()) return {PolyFp(p, {}), PolyFp::constant(p, 1)};
    PolyFp g = gcd(num, den);
    if (!g.is_one()) {
        num = num / g;
        den = den / g;
    }
    const std::uint32_t inv = mod_inv(den.lead(), p);
    return {num.scaled(inv), den.scaled(inv)};
}

}  // namespace

Field Field::finite(std::uint32_t p, std::uint32_t k) {
    if (!is_prime_u32(p) || k == 0) throw Error(ErrorKind::InvalidArgument, "GF(p^k) needs p prime and k >= 1");
    if (k == 1) return finite_with_modulus(PolyFp(p, {0, 1}));
    return finite_with_modulus(conway_like_modulus(p, k));
}

Field Field::finite_with_modulus(const PolyFp& modulus) {
    if (!is_irreducible(modulus) || modulus.lead() != 1)
        throw Error(ErrorKind::InvalidArgument, "finite field modulus must be monic irreducible");
    if (modulus.degree() == 1 && !(modulus == PolyFp(modulus.prime(), {0, 1})))
        return finite_with_modulus(PolyFp(modulus.prime(), {0, 1}));
    std::lock_guard<std::mutex> lock(cache_mutex());
    auto key = std::make_pair(modulus.prime(), modulus.coeffs());
    auto& cache = finite_cache();
    auto it = cache.find(key);
    if (it != cache.end()) return Field(it->second);
    auto d = build_finite(modulus);
    cache.emplace(key, d);
    return Field(d);
}

Field Field::rationals() {
    static const auto d = [] {
        auto f = std::make_shared<FieldData>();
        f->kind = FieldKind::Rationals;
        return std::shared_ptr<const FieldData>(f);
    }();
    return Field(d);
}

Field Field::rational_functions(std::uint32_t p) {
    if (!is_prime_u32(p)) throw Error(ErrorKind::InvalidArgument, "F_p(t) needs p prime");
    auto f = std::make_shared<FieldData>();
    f->kind = FieldKind::RationalFunctions;
    f->p = p;
    return Field(f);
}

FieldKind Field::kind() const { return d_->kind; }
std::uint32_t Field::characteristic() const { return d_->p; }
std::uint32_t Field::degree() const { return d_->k; }
const PolyFp& Field::modulus() const { return d_->modulus; }

std::optional<std::uint64_t> Field::cardinality() const {
    if (d_->kind == FieldKind::Finite) return d_->q;
    return std::nullopt;
}

bool Field::operator==(const Field& o) const {
    if (d_ == o.d_) return true;
    if (d_->kind != o.d_->kind || d_->p != o.d_->p) return false;
    if (d_->kind == FieldKind::Finite) return d_->modulus == o.d_->modulus;
    return true;
}

std::string Field::literal() const {
    switch (d_->kind) {
        case FieldKind::Finite: return "GF(" + std::to_string(d_->q) + ")";
        case FieldKind::Rationals: return "QQ";
        case FieldKind::RationalFunctions: return "Fp_t(" + std::to_string(d_->p) + ")";
    }
    return "?";
}

Elem Field::zero() const { return from_int(0); }
Elem Field::one() const { return from_int(1); }

Elem Field::from_int(std::int64_t n) const {
    switch (d_->kind) {
        case FieldKind::Finite: {
            std::int64_t r = n % static_cast<std::int64_t>(d_->p);
            if (r < 0) r += d_->p;
            return Elem(*this, static_cast<std::uint32_t>(r));
        }
        case FieldKind::Rationals: return Elem(*this, mpq_class(static_cast<long>(n)));
        case FieldKind::RationalFunctions:
            return Elem(*this, RatFunc{PolyFp::constant(d_->p, n), PolyFp::constant(d_->p, 1)});
    }
    throw Error(ErrorKind::UnsupportedField, "from_int");
}

Elem Field::from_rational(const mpq_class& q) const {
    if (d_->kind == FieldKind::Rationals) {
        mpq_class c(q);
        c.canonicalize();
        return Elem(*this, c);
    }
    mpz_class num = q.get_num(), den = q.get_den();
    const mpz_class pp(d_->p);
    if (den % pp == 0) throw Error(ErrorKind::DivisionByZero, "denominator divisible by the characteristic");
    mpz_class n = num % pp;
    if (n < 0) n += pp;
    mpz_class dd = den % pp;
    return from_int(n.get_si()) / from_int(dd.get_si());
}

Elem Field::from_index(std::uint64_t index) const {
    if (d_->kind != FieldKind::Finite || index >= d_->q)
        throw Error(ErrorKind::InvalidArgument, "from_index out of range");
    return Elem(*this, static_cast<std::uint32_t>(index));
}

Elem Field::gen() const {
    switch (d_->kind) {
        case FieldKind::Finite:
            return Elem(*this, d_->k == 1 ? 0u : d_->from_poly(PolyFp::monomial(d_->p, 1, 1) % d_->modulus));
        case FieldKind::RationalFunctions:
            return Elem(*this, RatFunc{PolyFp::monomial(d_->p, 1, 1), PolyFp::constant(d_->p, 1)});
        default: throw Error(ErrorKind::UnsupportedField, "QQ has no generator t");
    }
}

Elem Field::from_ratfunc(const PolyFp& num, const PolyFp& den) const {
    if (d_->kind == FieldKind::RationalFunctions) return Elem(*this, normalize(num, den));
    if (d_->kind == FieldKind::Finite) {
        const Elem t = gen();
        auto eval = [&](const PolyFp& f) {
            Elem acc = zero();
            for (std::size_t i = f.coeffs().size(); i-- > 0;) acc = acc * t + from_int(f.coeff(i));
            return acc;
        };
        return eval(num) / eval(den);
    }
    throw Error(ErrorKind::UnsupportedField, "polynomial literal over QQ");
}

std::vector<Elem> Field::elements() const {
    if (d_->kind != FieldKind::Finite) throw Error(ErrorKind::UnsupportedField, "enumeration of an infinite field");
    std::vector<Elem> out;
    out.reserve(d_->q);
    for (std::uint32_t i = 0; i < d_->q; ++i) out.emplace_back(*this, i);
    return out;
}

Elem Field::sample(std::mt19937_64& rng, int height) const {
    switch (d_->kind) {
        case FieldKind::Finite: {
            std::uniform_int_distribution<std::uint64_t> dist(0, d_->q - 1);
            return Elem(*this, static_cast<std::uint32_t>(dist(rng)));
        }
        case FieldKind::Rationals: {
            std::uniform_int_distribution<long> num(-height, height);
            std::uniform_int_distribution<long> den(1, std::max(1, height));
            mpq_class q(num(rng), den(rng));
            q.canonicalize();
            return Elem(*this, q);
        }
        case FieldKind::RationalFunctions: {
            std::uniform_int_distribution<std::uint32_t> c(0, d_->p - 1);
            std::uniform_int_distribution<int> dg(0, std::max(0, height));
            std::vector<std::uint32_t> n(dg(rng) + 1), dd(dg(rng) + 1);
            for (auto& x : n) x = c(rng);
            for (auto& x : dd) x = c(rng);
            dd.back() = 1;
            return Elem(*this, normalize(PolyFp(d_->p, n), PolyFp(d_->p, dd)));
        }
    }
    throw Error(ErrorKind::UnsupportedField, "sample");
}

Elem Field::sample_nonzero(std::mt19937_64& rng, int height) const {
    for (;;) {
        Elem e = sample(rng, height);
        if (!e.is_zero()) return e;
    }
}

// ---------------------------------------------------------------------------

Elem::Elem(Field f, Payload v) : f_(std::move(f)), v_(std::move(v)) {}

void Elem::check_same(const Elem& o) const {
    if (f_.d_ != o.f_.d_ && !(f_ == o.f_))
        throw Error(ErrorKind::FieldMismatch, f_.literal() + " vs " + o.f_.literal());
}

bool Elem::is_zero() const {
    switch (v_.index()) {
        case 0: return std::get<0>(v_) == 0;
        case 1: return sgn(std::get<1>(v_)) == 0;
        default: return std::get<2>(v_).num.is_zero();
    }
}

bool Elem::is_one() const {
    switch (v_.index()) {
        case 0: return std::get<0>(v_) == 1;
        case 1: return std::get<1>(v_) == 1;
        default: return std::get<2>(v_).num.is_one() && std::get<2>(v_).den.is_one();
    }
}

Elem Elem::operator+(const Elem& o) const {
    check_same(o);
    switch (v_.index()) {
        case 0: return Elem(f_, f_.d_->add(std::get<0>(v_), std::get<0>(o.v_)));
        case 1: return Elem(f_, mpq_class(std::get<1>(v_) + std::get<1>(o.v_)));
        default: {
            const auto& a = std::get<2>(v_);
            const auto& b = std::get<2>(o.v_);
            if (a.den == b.den) return Elem(f_, normalize(a.num + b.num, a.den));
            return Elem(f_, normalize(a.num * b.den + b.num * a.den, a.den * b.den));
        }
    }
}

Elem Elem::operator-() const {
    switch (v_.index()) {
        case 0: return Elem(f_, f_.d_->neg(std::get<0>(v_)));
        case 1: return Elem(f_, mpq_class(-std::get<1>(v_)));
        default: {
            const auto& a = std::get<2>(v_);
            return Elem(f_, RatFunc{-a.num, a.den});
        }
    }
}

Elem Elem::operator-(const Elem& o) const { return *this + (-o); }

Elem Elem::operator*(const Elem& o) const {
    check_same(o);
    switch (v_.index()) {
        case 0: return Elem(f_, f_.d_->mul(std::get<0>(v_), std::get<0>(o.v_)));
        case 1: return Elem(f_, mpq_class(std::get<1>(v_) * std::get<1>(o.v_)));
        default: {
            const auto& a = std::get<2>(v_);
            const auto& b = std::get<2>(o.v_);
            return Elem(f_, normalize(a.num * b.num, a.den * b.den));
        }
    }
}

Elem Elem::inv() const {
    if (is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
    switch (v_.index()) {
        case 0: return Elem(f_, f_.d_->inv(std::get<0>(v_)));
        case 1: return Elem(f_, mpq_class(1 / std::get<1>(v_)));
        default: {
            const auto& a = std::get<2>(v_);
            return Elem(f_, normalize(a.den, a.num));
        }
    }
}

Elem Elem::operator/(const Elem& o) const { return *this * o.inv(); }

Elem Elem::pow(std::int64_t e) const {
    Elem base = e < 0 ? inv() : *this;
    std::uint64_t n = e < 0 ? static_cast<std::uint64_t>(-e) : static_cast<std::uint64_t>(e);
    Elem r = f_.one();
    while (n) {
        if (n & 1) r = r * base;
        base = base * base;
        n >>= 1;
    }
    return r;
}

bool Elem::operator==(const Elem& o) const {
    if (!(f_ == o.f_)) return false;
    return v_ == o.v_;
}

bool Elem::is_square() const { return sqrt().has_value(); }

std::optional<Elem> Elem::sqrt() const {
    if (is_zero()) return *this;
    switch (v_.index()) {
        case 0: {
            const auto& d = *f_.d_;
            if (d.p == 2) return pow(static_cast<std::int64_t>(d.q / 2));
            if (d.k == 1) {
                for (std::uint32_t x = 1; x < d.p; ++x)
                    if (std::uint64_t(x) * x % d.p == std::get<0>(v_)) return Elem(f_, x);
                return std::nullopt;
            }
            const std::uint32_t l = d.log_table[std::get<0>(v_)];
            if (l % 2) return std::nullopt;
            return Elem(f_, d.exp_table[l / 2]);
        }
        case 1: {
            const mpq_class& q = std::get<1>(v_);
            if (sgn(q) < 0) return std::nullopt;
            if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t()))
                return std::nullopt;
            mpz_class n, dd;
            mpz_sqrt(n.get_mpz_t(), q.get_num_mpz_t());
            mpz_sqrt(dd.get_mpz_t(), q.get_den_mpz_t());
            return Elem(f_, mpq_class(n, dd));
        }
        default: {
            const auto& a = std::get<2>(v_);
            PolyFp root;
            if (!poly_sqrt(a.num * a.den, root)) return std::nullopt;
            return Elem(f_, normalize(root, a.den));
        }
    }
}

std::string Elem::to_string() const {
    switch (v_.index()) {
        case 0: {
            const auto& d = *f_.d_;
            if (d.k == 1) return std::to_string(std::get<0>(v_));
            return d.to_poly(std::get<0>(v_)).to_string('t');
        }
        case 1: return std::get<1>(v_).get_str();
        default: {
            const auto& a = std::get<2>(v_);
            if (a.den.is_one()) return a.num.to_string('t');
            return "(" + a.num.to_string('t') + ")/(" + a.den.to_string('t') + ")";
        }
    }
}

// ---------------------------------------------------------------------------

Place Place::at_prime(std::uint32_t p) {
    if (!is_prime_u32(p)) throw Error(ErrorKind::InvalidArgument, "PrimePlace needs a prime");
    Place pl;
    pl.kind = Kind::Prime;
    pl.prime = p;
    return pl;
}

Place Place::at_poly(const PolyFp& f) {
    if (f.lead() != 1 || !is_irreducible(f))
        throw Error(ErrorKind::InvalidArgument, "PolyPlace needs a monic irreducible polynomial");
    Place pl;
    pl.kind = Kind::Poly;
    pl.prime = f.prime();
    pl.poly = f;
    return pl;
}

Place Place::infinity(std::uint32_t p) {
    Place pl;
    pl.kind = Kind::Infinity;
    pl.prime = p;
    return pl;
}

std::string Place::to_string() const {
    switch (kind) {
        case Kind::Real: return "real";
        case Kind::Prime: return "p=" + std::to_string(prime);
        case Kind::Poly: return "poly(" + poly.to_string('t') + ")";
        case Kind::Infinity: return "infinity";
    }
    return "?";
}

bool Place::operator==(const Place& o) const {
    return kind == o.kind && prime == o.prime && poly == o.poly;
}

std::vector<Elem> finite_field_embedding(const Field& small, const Field& big) {
    if (!small.is_finite() || !big.is_finite() || small.characteristic() != big.characteristic() ||
        big.degree() % small.degree() != 0)
        throw Error(ErrorKind::FieldMismatch, "no embedding " + small.literal() + " -> " + big.literal());
    const PolyFp& f = small.modulus();
    std::optional<Elem> root;
    for (const auto& x : big.elements()) {
        Elem acc = big.zero();
        for (std::size_t i = f.coeffs().size(); i-- > 0;) acc = acc * x + big.from_int(f.coeff(i));
        if (acc.is_zero()) {
            root = x;
            break;
        }
    }
    if (!root) throw Error(ErrorKind::InternalInconsistency, "modulus has no root in extension");
    std::vector<Elem> table;
    const std::uint32_t p = small.characteristic();
    for (std::uint64_t idx = 0; idx < *small.cardinality(); ++idx) {
        Elem acc = big.zero();
        Elem pw = big.one();
        std::uint64_t x = idx;
        for (std::uint32_t i = 0; i < small.degree(); ++i) {
            acc += big.from_int(static_cast<std::int64_t>(x % p)) * pw;
            x /= p;
            pw *= *root;
        }
        table.push_back(acc);
    }
    return table;
}

Elem map_element(const Elem& x, const std::vector<Elem>& embedding) { return embedding.at(x.index()); }

int absolute_trace(const Elem& x) {
    const Field& f = x.field();
    if (!f.is_finite() || f.characteristic() != 2) throw Error(ErrorKind::UnsupportedField, "absolute trace");
    Elem acc = x, y = x;
    for (std::uint32_t i = 1; i < f.degree(); ++i) {
        y = y * y;
        acc += y;
    }
    return acc.is_zero() ? 0 : 1;
}

}  // namespace qfalg
