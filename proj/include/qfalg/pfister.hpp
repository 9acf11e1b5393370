#pragma once

// Similarity to quadratic Pfister forms.

#include <optional>
#include <string>
#include <vector>

#include "qfalg/witt.hpp"

namespace qfalg {

// q is isometric to scale * (<<bilinear_slots>> (x) [1, binary_slot]); a unary q
// has no binary slot and equals <scale>.
struct PfisterCertificate {
    Elem scale;
    std::optional<Elem> binary_slot;
    std::vector<Elem> bilinear_slots;
};

// scale * (<<bilinear_slots>> (x) [1, binary_slot]), i.e. the form q itself up to isometry.
QuadraticForm pfister_from_certificate(const Field& f, const PfisterCertificate& c);

struct PfisterResult {
    enum class Verdict { Yes, No, Undecided };
    Verdict verdict = Verdict::Undecided;
    std::optional<PfisterCertificate> certificate;
    // Which rung of the ladder decided: binary, unary, hyperbolic, isotropic,
    // discriminant, arf, hasse, constructive.
    std::string method;
    // No: the obstruction; Undecided: the reason.
    std::string detail;
};

const char* to_string(PfisterResult::Verdict v);

// Requires dim q = 2^m (NotPowerOfTwoDim otherwise).
PfisterResult pfister_similarity(const QuadraticForm& q, const OracleOptions& opt = {});

// Bilinear slots psi with target isometric to <<psi>> (x) seed, built by doubling a
// Pfister subform; empty when a step fails. Target is assumed anisotropic.
std::optional<std::vector<Elem>> extend_pfister(const QuadraticForm& target, const QuadraticForm& seed,
                                                const OracleOptions& opt = {});

// A nonzero value of q on a basis vector or a sum of two basis vectors, with that vector.
std::pair<Elem, Vec> represented_value(const QuadraticForm& q);

}  // namespace qfalg
