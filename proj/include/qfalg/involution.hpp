#pragma once

// Algebras with involution, represented by an adjoint form: Ad(h) for a
// hermitian form h over (D, theta), or Ad(q) for a quadratic pair on a split
// algebra. The batteries evaluate the decomposability criteria for symplectic
// involutions of index <= 2 and unitary involutions on split algebras.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qfalg/hermitian.hpp"
#include "qfalg/pfister.hpp"

namespace qfalg {

enum class InvolutionKind { Orthogonal, Symplectic, Unitary };
const char* to_string(InvolutionKind k);

class InvolutionRep {
public:
    static InvolutionRep adjoint(HermitianForm h);
    static InvolutionRep adjoint(QuadraticForm q);

    bool is_hermitian() const { return std::holds_alternative<HermitianForm>(form_); }
    // Throw UnsupportedVariant on the wrong variant.
    const HermitianForm& hermitian() const;
    const QuadraticForm& quadratic() const;

    InvolutionKind kind() const { return kind_; }
    std::size_t degree() const { return degree_; }
    std::string to_string() const;

private:
    InvolutionRep(std::variant<HermitianForm, QuadraticForm> f, InvolutionKind k, std::size_t d)
        : form_(std::move(f)), kind_(k), degree_(d) {}
    std::variant<HermitianForm, QuadraticForm> form_;
    InvolutionKind kind_;
    std::size_t degree_;
};

struct Decomposition {
    BilinearForm phi;
    Algebra base;
    // "diagonal" (Gram-Schmidt over D) or "hyperbolic" (split base).
    std::string certificate;
};

// (A, sigma) = Ad(phi) (x) (B, tau). UnsupportedVariant for quadratic pairs,
// lambda != 1, or alternating forms over the base field.
Decomposition decompose(const InvolutionRep& rep);

// Ad(phi (x) pi), pi the norm form of the base.
InvolutionRep boxtimes_base(const InvolutionRep& rep);

// Decided on the hermitian form and on the boxtimes image; InternalInconsistency
// when the two disagree, OracleUndecided when either side is undecided.
bool is_isotropic_inv(const InvolutionRep& rep, const OracleOptions& opt = {});
bool is_hyperbolic_inv(const InvolutionRep& rep, const OracleOptions& opt = {});

// Similarity of the trace forms. Over QQ with 4 | dim and square determinant only
// the sign of the scalar matters; otherwise a bounded candidate search, with
// OracleUndecided when no candidate works and no invariant rules similarity out.
struct SimilarityResult {
    bool similar = false;
    std::optional<Elem> scalar;
    std::string method;
};
SimilarityResult similarity_inv(const InvolutionRep& rep1, const InvolutionRep& rep2, const OracleOptions& opt = {});
bool isomorphic_inv(const InvolutionRep& rep1, const InvolutionRep& rep2, const OracleOptions& opt = {});

struct DecomposabilityResult {
    enum class Verdict { Yes, No, Undecided };
    Verdict verdict = Verdict::Undecided;
    // psi = bilinear_pfister(slots), with Ad(psi) (x) (B, tau) isomorphic to the input.
    std::vector<Elem> slots;
    std::string method;
    std::string detail;
    PfisterResult pfister;
};
const char* to_string(DecomposabilityResult::Verdict v);

// HypothesisViolation unless symplectic over a quaternion base or unitary over an
// etale base, with degree 2^n, n >= 1.
DecomposabilityResult totally_decomposable(const InvolutionRep& rep, const OracleOptions& opt = {});

// ---------------------------------------------------------------------------

enum class Truth { True, False, Unknown };
const char* to_string(Truth t);

struct ConditionResult {
    std::string id;
    Truth value = Truth::Unknown;
    std::string method;
    std::string detail;
    // Replayable data: (name, literal) pairs.
    std::vector<std::pair<std::string, std::string>> certificates;
};

// Shape of (A, sigma)_K for one sampled extension K.
struct SampledExtension {
    std::string extension;
    std::string shape;  // anisotropic | hyperbolic | isotropic-non-hyperbolic | undecided
    std::string method;
    std::string detail;
};

struct DecisionReport {
    enum class Verdict { AllEquivalent, CounterexampleFound, Inconclusive };
    std::string theorem;  // symplectic | unitary
    std::string algebra;
    std::string phi;
    std::size_t degree = 0;
    std::vector<ConditionResult> conditions;
    std::vector<SampledExtension> sampled_extensions;
    // The extension quantifier is never exhausted; this records what was skipped.
    std::string sampling_note;
    Verdict verdict = Verdict::Inconclusive;
    std::vector<std::string> reasons;
};
const char* to_string(DecisionReport::Verdict v);

struct BatteryOptions {
    OracleOptions oracle;
    // F_{q^k} for 1 < k <= max_finite_degree, capped by max_finite_cardinality.
    std::uint32_t max_finite_degree = 4;
    std::uint64_t max_finite_cardinality = 1u << 16;
};

DecisionReport theorem_battery_symplectic(const Algebra& Q, const BilinearForm& phi, const BatteryOptions& opt = {});
DecisionReport theorem_battery_unitary(const Algebra& K, const BilinearForm& phi, const BatteryOptions& opt = {});

// Shape of q over the sampled extensions of its base field (first entry: the field itself).
std::vector<SampledExtension> sample_extensions(const QuadraticForm& q, const BatteryOptions& opt = {});

}  // namespace qfalg
