#include <doctest.h>

#include "support.hpp"

using namespace qfalg;

namespace {

InvolutionRep ad_phi(const BilinearForm& phi, const Algebra& D) {
    return InvolutionRep::adjoint(from_diagonal(D, *phi.diagonal_entries()));
}

BilinearForm bdiag(const Field& f, std::initializer_list<long> entries) {
    std::vector<Elem> d;
    for (long e : entries) d.push_back(f.from_int(e));
    return diagonal_bilinear(f, d);
}

// Every diagonal bilinear form of dimension n with unit entries, up to reordering.
std::vector<BilinearForm> all_diagonal(const Field& f, std::size_t n) {
    std::vector<Elem> units;
    for (const auto& x : f.elements())
        if (!x.is_zero()) units.push_back(x);
    std::vector<BilinearForm> out;
    std::vector<std::size_t> idx(n, 0);
    for (;;) {
        std::vector<Elem> d;
        for (auto i : idx) d.push_back(units[i]);
        out.push_back(diagonal_bilinear(f, d));
        std::size_t k = 0;
        while (k < n && ++idx[k] == units.size()) ++k;
        if (k == n) return out;
        for (std::size_t j = 0; j < k; ++j) idx[j] = idx[k];
    }
}

bool any_disagreement(const DecisionReport& r) {
    bool t = false, f = false;
    for (const auto& c : r.conditions) {
        t = t || c.value == Truth::True;
        f = f || c.value == Truth::False;
    }
    return t && f;
}

}  // namespace

TEST_CASE("involution kind and degree follow the form") {
    const Algebra Dq = parse_algebra("quat(a=-1,b=2)@QQ");
    const Field& Q = Dq.field();
    const InvolutionRep sym = InvolutionRep::adjoint(from_diagonal(Dq, {Q.one(), Q.from_int(3)}));
    CHECK(sym.kind() == InvolutionKind::Symplectic);
    CHECK(sym.degree() == 4);
    // Skew-hermitian over a quaternion algebra: orthogonal.
    const InvolutionRep orth = InvolutionRep::adjoint(HermitianForm(Dq, -Q.one(), {{Dq.basis(2)}}));
    CHECK(orth.kind() == InvolutionKind::Orthogonal);
    CHECK(orth.degree() == 2);
    const InvolutionRep uni = InvolutionRep::adjoint(parse_hermitian("diag(1,2,5)@etale(a=-1)@QQ"));
    CHECK(uni.kind() == InvolutionKind::Unitary);
    CHECK(uni.degree() == 3);
    const Algebra base = Algebra::base(Q);
    CHECK(InvolutionRep::adjoint(from_diagonal(base, {Q.one(), Q.one()})).kind() == InvolutionKind::Orthogonal);
    CHECK(InvolutionRep::adjoint(HermitianForm(base, -Q.one(), {{base.zero(), base.one()}, {-base.one(), base.zero()}})).kind() ==
          InvolutionKind::Symplectic);
    const Field f2 = Field::finite(2);
    const Algebra b2 = Algebra::base(f2);
    CHECK(InvolutionRep::adjoint(HermitianForm(b2, f2.one(), {{b2.zero(), b2.one()}, {b2.one(), b2.zero()}})).kind() ==
          InvolutionKind::Symplectic);
    CHECK(InvolutionRep::adjoint(from_diagonal(b2, {f2.one(), f2.one()})).kind() == InvolutionKind::Orthogonal);
    const InvolutionRep pair = InvolutionRep::adjoint(parse_quadratic("binq(1,1)@GF(2)"));
    CHECK(pair.kind() == InvolutionKind::Orthogonal);
    CHECK_THROWS_AS(pair.hermitian(), Error);
    CHECK_THROWS_AS(sym.quadratic(), Error);
}

TEST_CASE("decomposition reproduces the involution and its trace form") {
    auto rng = qt::rng_for(40);
    const Field f3 = Field::finite(3), Q = Field::rationals();
    for (const Algebra& D : {Algebra::etale(f3, f3.one()), parse_algebra("quat(a=-1,b=2)@QQ"),
                             parse_algebra("quat(a=-1,b=-1)@QQ"), parse_algebra("etale(a=-1)@QQ")})
        for (std::size_t n = 1; n <= 3; ++n) {
            const Field& f = D.field();
            const HermitianForm h = from_diagonal(D, qt::nonzero_list(f, n, rng, 3));
            const InvolutionRep rep = InvolutionRep::adjoint(h);
            const Decomposition d = decompose(rep);
            CAPTURE(h.to_string());
            CHECK(d.base == D);
            CHECK(isomorphic_inv(rep, ad_phi(d.phi, D)));
            const QuadraticForm image = tensor(d.phi, norm_form(D));
            CHECK(isometric(image, trace_form(h)));
            if (f.is_finite()) CHECK(qt::count_zeros(image) == qt::count_zeros(trace_form(h)));
            const InvolutionRep box = boxtimes_base(rep);
            CHECK(box.degree() == n * D.dim());
            CHECK(box.kind() == InvolutionKind::Orthogonal);
        }
    CHECK_THROWS_AS(decompose(InvolutionRep::adjoint(parse_quadratic("hyp(1)@QQ"))), Error);
}

TEST_CASE("isotropy and hyperbolicity of involutions match brute force over finite fields") {
    auto rng = qt::rng_for(41);
    const Field f3 = Field::finite(3), f5 = Field::finite(5);
    for (const Algebra& D : {Algebra::etale(f3, f3.one()), Algebra::etale(f5, f5.from_int(2)), Algebra::base(f5),
                             Algebra::quaternion(f3, f3.one(), f3.one())})
        for (std::size_t n = 1; n <= 3; ++n)
            for (int rep = 0; rep < 4; ++rep) {
                if (D.dim() * n > 8) continue;
                const HermitianForm h = from_diagonal(D, qt::nonzero_list(D.field(), n, rng));
                const QuadraticForm q = trace_form(h);
                const InvolutionRep r = InvolutionRep::adjoint(h);
                CAPTURE(h.to_string());
                CHECK(is_isotropic_inv(r) == qt::brute_isotropic(q));
                CHECK(is_hyperbolic_inv(r) == qt::brute_hyperbolic(q));
            }
}

TEST_CASE("similarity of involutions") {
    const Algebra D = parse_algebra("quat(a=-1,b=-1)@QQ");
    const Field& Q = D.field();
    const HermitianForm h = from_diagonal(D, {Q.one(), Q.from_int(2)});
    for (long c : {3L, -1L, 5L}) {
        const InvolutionRep a = InvolutionRep::adjoint(h), b = InvolutionRep::adjoint(scale(Q.from_int(c), h));
        const SimilarityResult s = similarity_inv(a, b);
        CAPTURE(c);
        CHECK(s.similar);
        REQUIRE(s.scalar);
        CHECK(isometric(trace_form(scale(*s.scalar, h)), trace_form(scale(Q.from_int(c), h))));
    }
    // <1,1> (x) n_D is 8 <1>; <1,-1> (x) n_D is hyperbolic: not similar.
    CHECK_FALSE(isomorphic_inv(InvolutionRep::adjoint(from_diagonal(D, {Q.one(), Q.one()})),
                               InvolutionRep::adjoint(from_diagonal(D, {Q.one(), -Q.one()}))));
}

TEST_CASE("unitary involutions of 2-power degree over a finite field are totally decomposable") {
    const Field f3 = Field::finite(3);
    const Algebra K = Algebra::etale(f3, f3.one());
    for (std::size_t n : {2u, 4u})
        for (const BilinearForm& phi : all_diagonal(f3, n)) {
            const InvolutionRep rep = ad_phi(phi, K);
            CAPTURE(phi.to_string());
            const DecomposabilityResult r = totally_decomposable(rep);
            REQUIRE(r.verdict == DecomposabilityResult::Verdict::Yes);
            CHECK(isomorphic_inv(rep, ad_phi(bilinear_pfister(f3, r.slots), K)));
        }
}

TEST_CASE("total decomposability over QQ") {
    const Algebra Dh = parse_algebra("quat(a=-1,b=2)@QQ"), Dd = parse_algebra("quat(a=-1,b=-1)@QQ");
    const Algebra K = parse_algebra("etale(a=-1)@QQ");
    const Field& Q = Dh.field();
    auto yes = [&](const InvolutionRep& rep, const Algebra& D) {
        const DecomposabilityResult r = totally_decomposable(rep);
        REQUIRE(r.verdict == DecomposabilityResult::Verdict::Yes);
        CHECK(isomorphic_inv(rep, ad_phi(bilinear_pfister(Q, r.slots), D)));
    };
    yes(ad_phi(bilinear_pfister(Q, {Q.from_int(2), Q.from_int(3)}), Dh), Dh);
    yes(ad_phi(bdiag(Q, {1, 1, 1, 3}), Dd), Dd);
    yes(ad_phi(bdiag(Q, {1, 1, 1, 3}), K), K);
    CHECK(totally_decomposable(ad_phi(bdiag(Q, {1, 1, 1, -3}), Dd)).verdict == DecomposabilityResult::Verdict::No);
    CHECK(totally_decomposable(ad_phi(bdiag(Q, {1, 1, 1, 2}), K)).verdict == DecomposabilityResult::Verdict::No);
    CHECK_THROWS_AS(totally_decomposable(ad_phi(bdiag(Q, {1, 1, 1}), K)), Error);
    CHECK_THROWS_AS(totally_decomposable(InvolutionRep::adjoint(from_diagonal(Algebra::base(Q), {Q.one(), Q.one()}))), Error);
}

TEST_CASE("symplectic batteries") {
    const Field Q = Field::rationals();
    const DecisionReport pos = theorem_battery_symplectic(parse_algebra("quat(a=-1,b=2)@QQ"), bilinear_pfister(Q, {Q.from_int(2), Q.from_int(3)}));
    CHECK(pos.verdict == DecisionReport::Verdict::AllEquivalent);
    REQUIRE(pos.conditions.size() == 4);
    for (const auto& c : pos.conditions) CHECK(c.value == Truth::True);
    CHECK_FALSE(pos.sampling_note.empty());

    const DecisionReport neg = theorem_battery_symplectic(parse_algebra("quat(a=-1,b=-1)@QQ"), bdiag(Q, {1, 1, 1, -3}));
    CHECK(neg.verdict == DecisionReport::Verdict::AllEquivalent);
    for (const auto& c : neg.conditions) CHECK(c.value == Truth::False);
    CHECK(neg.degree == 8);
}

TEST_CASE("unitary batteries") {
    const Field Q = Field::rationals();
    const Algebra K = parse_algebra("etale(a=-1)@QQ");
    const DecisionReport no = theorem_battery_unitary(K, bdiag(Q, {1, 1, 1, 2}));
    CHECK(no.verdict == DecisionReport::Verdict::AllEquivalent);
    for (const auto& c : no.conditions) CHECK(c.value == Truth::False);
    const DecisionReport yes = theorem_battery_unitary(K, bdiag(Q, {1, 1, 1, 3}));
    CHECK(yes.verdict == DecisionReport::Verdict::AllEquivalent);
    for (const auto& c : yes.conditions) CHECK(c.value == Truth::True);
    // Batteries never throw: a wrong base is reported as inconclusive with the hypothesis named.
    const DecisionReport wrong = theorem_battery_unitary(parse_algebra("quat(a=-1,b=2)@QQ"), bdiag(Q, {1, 1}));
    CHECK(wrong.verdict == DecisionReport::Verdict::Inconclusive);
    REQUIRE_FALSE(wrong.reasons.empty());
    CHECK(wrong.reasons.front().find("hypothesis") != std::string::npos);
}

TEST_CASE("batteries never report decided conditions that disagree") {
    auto rng = qt::rng_for(42);
    const Field Q = Field::rationals();
    const Algebra Dd = parse_algebra("quat(a=-1,b=-1)@QQ"), K = parse_algebra("etale(a=-1)@QQ");
    for (int rep = 0; rep < 12; ++rep) {
        const std::size_t n = rep % 2 ? 4 : 2;
        std::vector<Elem> d;
        for (std::size_t i = 0; i < n; ++i) {
            const long v = static_cast<long>(rng() % 11) - 5;
            d.push_back(Q.from_int(v == 0 ? 1 : v));
        }
        const BilinearForm phi = diagonal_bilinear(Q, d);
        CAPTURE(phi.to_string());
        for (const DecisionReport& r : {theorem_battery_symplectic(Dd, phi), theorem_battery_unitary(K, phi)}) {
            CHECK(r.verdict != DecisionReport::Verdict::CounterexampleFound);
            if (r.verdict == DecisionReport::Verdict::AllEquivalent) CHECK_FALSE(any_disagreement(r));
            CHECK_FALSE(r.sampled_extensions.empty());
        }
    }
    const Field f3 = Field::finite(3);
    for (const BilinearForm& phi : all_diagonal(f3, 2)) {
        const DecisionReport r = theorem_battery_unitary(Algebra::etale(f3, f3.one()), phi);
        CHECK(r.verdict != DecisionReport::Verdict::CounterexampleFound);
        CHECK_FALSE(any_disagreement(r));
    }
}
