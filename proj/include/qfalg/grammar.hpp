#pragma once

// Text literals for fields, elements, forms and algebras:
//   fields     QQ | GF(q) | Fp_t(p)
//   elements   integers, n/d, and +, -, *, /, ^ expressions in t
//   qform      diag(..)@F | qmat(r;..)@F | binq(a,c)@F | hyp(k)@F | pfister_b(..)@F
//              | qpfister(a;slots)@F | norm(ALG) | tensor(B, Q) | sum(Q, Q) | scale(c, Q)
//   bilinear   bdiag(..)@F | bmat(r;..)@F | pfister_b(..)@F | diag(..)@F | tensor(B, B) | sum(B, B) | scale(c, B)
//   algebra    quat(a=..,b=..)@F | etale(a=..)@F | etale(split)@F | F
//   hermitian  diag(..[;lambda=c])@ALG | hmat([..],..;..[;lambda=c])@ALG | hyp(k)@ALG | sum(H, H) | scale(c, H)
// Printing any object with to_string() and parsing it back gives an equal object.

#include <string>
#include <string_view>

#include "qfalg/hermitian.hpp"

namespace qfalg {

class SyntaxError : public Error {
public:
    SyntaxError(std::size_t line, std::size_t col, const std::string& expected, const std::string& near);
    std::size_t line() const { return line_; }
    std::size_t col() const { return col_; }
    const std::string& expected() const { return expected_; }

private:
    std::size_t line_, col_;
    std::string expected_;
};

Field parse_field(std::string_view text);
Elem parse_element(const Field& f, std::string_view text);
QuadraticForm parse_quadratic(std::string_view text);
BilinearForm parse_bilinear(std::string_view text);
// A bilinear form whose field is given by context: the @F suffix may be omitted.
BilinearForm parse_bilinear_over(const Field& f, std::string_view text);
Algebra parse_algebra(std::string_view text);
HermitianForm parse_hermitian(std::string_view text);

}  // namespace qfalg
