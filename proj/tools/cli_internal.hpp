#pragma once

#include "cli_app.hpp"

#include "qfalg/grammar.hpp"
#include "qfalg/involution.hpp"

namespace qfalg::cli {

// What a handler fills in; run() wraps it with the common envelope.
struct Report {
    std::string verdict = "decided";  // decided | undecided | inconclusive
    Json verdicts = Json::object();
    Json result = Json::object();
    Json certificates = Json::object();
    // Present when --verify was given: {"checks": n, "agreed": bool, "failures": [...]}.
    std::optional<Json> verify;
};

class Verifier {
public:
    void check(bool ok, const std::string& what) {
        ++checks_;
        if (!ok) failures_.push_back(what);
    }
    Json json() const {
        Json j;
        j["checks"] = checks_;
        j["agreed"] = failures_.empty();
        j["failures"] = failures_;
        return j;
    }

private:
    std::size_t checks_ = 0;
    std::vector<std::string> failures_;
};

OracleOptions oracle_options(const Flags& f);

Json to_json(const Elem& e);
Json to_json(const Vec& v);
Json to_json(const Matrix& m);
Json to_json(const AlgVec& v);
Json to_json(const IsotropyResult& r);
Json to_json(const PfisterResult& r, const Field& f);

// Literal lookup with a usage error naming the expected argument.
const std::string& literal_arg(const Command& cmd, std::size_t i, const char* what);
const std::string& option_arg(const Command& cmd, const std::string& name);

// Ad(h) or a bare hermitian literal; Ad(q) for a quadratic pair.
InvolutionRep parse_involution(std::string_view text);

Report run_qform(const Command& cmd);
Report run_alg(const Command& cmd);
Report run_herm(const Command& cmd);
Report run_inv(const Command& cmd);
Report run_corpus(const Command& cmd);

}  // namespace qfalg::cli
