#include "cli_internal.hpp"

namespace qfalg::cli {

namespace {

// "a=-1,b=2@QQ" -> quat(a=-1,b=2)@QQ; full literals pass through.
Algebra base_algebra(const std::string& text, const char* head) {
    const std::string h(head);
    if (text.rfind(h + "(", 0) == 0) return parse_algebra(text);
    const auto at = text.find('@');
    if (at == std::string::npos) throw Error(ErrorKind::InvalidArgument, "expected " + h + " parameters as ..@F, got '" + text + "'");
    return parse_algebra(h + "(" + text.substr(0, at) + ")" + text.substr(at));
}

InvolutionRep adjoint_of(const BilinearForm& phi, const Algebra& D) {
    return InvolutionRep::adjoint(tensor_bh(phi, unit_form(D)));
}

Json rep_header(const InvolutionRep& rep) {
    Json j;
    j["involution"] = rep.to_string();
    j["kind"] = to_string(rep.kind());
    j["degree"] = rep.degree();
    return j;
}

Json named_certificates(const std::vector<std::pair<std::string, std::string>>& certs) {
    Json j = Json::object();
    for (const auto& [name, value] : certs) {
        if (!j.contains(name)) {
            j[name] = value;
        } else {
            if (!j[name].is_array()) j[name] = Json::array({j[name]});
            j[name].push_back(value);
        }
    }
    return j;
}

std::vector<std::string> as_list(const Json& v) {
    if (v.is_array()) return v.get<std::vector<std::string>>();
    return {v.get<std::string>()};
}

void replay_condition(Verifier& v, const Json& certs, const BilinearForm& phi, const Algebra& D, const OracleOptions& opt) {
    const Field& f = D.field();
    if (certs.contains("psi")) {
        const InvolutionRep target = adjoint_of(phi, D);
        for (const auto& lit : as_list(certs["psi"]))
            v.check(isomorphic_inv(target, adjoint_of(parse_bilinear_over(f, lit), D), opt),
                    "Ad(" + lit + ") (x) base is not isomorphic to the input");
    }
    if (certs.contains("rho") && certs.contains("pfister") && certs.contains("scale")) {
        const QuadraticForm rho = parse_quadratic(certs["rho"].get<std::string>());
        const QuadraticForm pf = parse_quadratic(certs["pfister"].get<std::string>());
        const Elem c = parse_element(f, certs["scale"].get<std::string>());
        v.check(isometric(rho, scale(c, pf), opt), "rho is not the certified Pfister multiple");
    }
}

Report battery(const Command& cmd, const OracleOptions& opt) {
    const std::string& theorem = literal_arg(cmd, 0, "symplectic|unitary");
    const bool symplectic = theorem == "symplectic";
    if (!symplectic && theorem != "unitary")
        throw Error(ErrorKind::InvalidArgument, "battery theorem must be symplectic or unitary, got '" + theorem + "'");
    const Algebra D = symplectic ? base_algebra(option_arg(cmd, "quat"), "quat") : base_algebra(option_arg(cmd, "etale"), "etale");
    const BilinearForm phi = parse_bilinear_over(D.field(), option_arg(cmd, "phi"));
    BatteryOptions bo;
    bo.oracle = opt;
    const DecisionReport rep = symplectic ? theorem_battery_symplectic(D, phi, bo) : theorem_battery_unitary(D, phi, bo);

    Report r;
    r.verdict = rep.verdict == DecisionReport::Verdict::Inconclusive ? "inconclusive" : "decided";
    r.result["theorem"] = rep.theorem;
    r.result["algebra"] = rep.algebra;
    r.result["phi"] = rep.phi;
    r.result["degree"] = rep.degree;
    Json conds = Json::object();
    for (const auto& c : rep.conditions) {
        Json j;
        j["value"] = to_string(c.value);
        j["method"] = c.method;
        if (!c.detail.empty()) j["detail"] = c.detail;
        conds[c.id] = j;
        r.verdicts[c.id] = to_string(c.value);
        r.certificates[c.id] = named_certificates(c.certificates);
    }
    r.result["conditions"] = conds;
    Json ext = Json::array();
    for (const auto& s : rep.sampled_extensions) {
        Json j;
        j["extension"] = s.extension;
        j["shape"] = s.shape;
        j["method"] = s.method;
        if (!s.detail.empty()) j["detail"] = s.detail;
        ext.push_back(j);
    }
    r.result["sampled_extensions"] = ext;
    r.result["sampling_note"] = rep.sampling_note;
    r.result["verdict"] = to_string(rep.verdict);
    r.result["reasons"] = rep.reasons;
    r.verdicts["battery"] = to_string(rep.verdict);
    if (cmd.flags.verify) {
        Verifier v;
        for (const auto& [id, certs] : r.certificates.items()) replay_condition(v, certs, phi, D, opt);
        r.verify = v.json();
    }
    return r;
}

}  // namespace

Report run_inv(const Command& cmd) {
    const OracleOptions opt = oracle_options(cmd.flags);
    if (cmd.sub == "battery") return battery(cmd, opt);

    const InvolutionRep rep = parse_involution(literal_arg(cmd, 0, "<involution>"));
    Report r;
    r.result = rep_header(rep);
    Verifier v;

    if (cmd.sub == "decompose") {
        const Decomposition d = decompose(rep);
        r.result["phi"] = d.phi.to_string();
        r.result["base"] = d.base.literal();
        r.verdicts["phi"] = r.result["phi"];
        r.certificates["method"] = d.certificate;
        r.certificates["phi"] = r.result["phi"];
        if (cmd.flags.verify)
            v.check(isomorphic_inv(rep, adjoint_of(d.phi, d.base), opt), "Ad(phi) (x) base is not isomorphic to the input");
    } else if (cmd.sub == "isomorphic") {
        const InvolutionRep rep2 = parse_involution(literal_arg(cmd, 1, "<involution>"));
        const SimilarityResult s = similarity_inv(rep, rep2, opt);
        r.result["other"] = rep_header(rep2);
        r.verdicts["isomorphic"] = s.similar;
        r.result["method"] = s.method;
        if (s.scalar) r.certificates["similarity_scalar"] = s.scalar->to_string();
        if (cmd.flags.verify) {
            v.check(similarity_inv(rep2, rep, opt).similar == s.similar, "isomorphism is not symmetric");
            if (s.scalar && rep.is_hermitian() && rep2.is_hermitian()) {
                const QuadraticForm q1 = trace_form(rep.hermitian());
                const QuadraticForm q2 = trace_form(rep2.hermitian());
                v.check(isometric(q1, scale(*s.scalar, q2), opt) || isometric(q2, scale(*s.scalar, q1), opt),
                        "trace forms are not similar by the certified scalar");
            }
        }
    } else if (cmd.sub == "totally-decomposable") {
        const DecomposabilityResult td = totally_decomposable(rep, opt);
        r.verdict = td.verdict == DecomposabilityResult::Verdict::Undecided ? "undecided" : "decided";
        r.verdicts["totally_decomposable"] = to_string(td.verdict);
        r.result["method"] = td.method;
        if (!td.detail.empty()) r.result["detail"] = td.detail;
        const Field& f = rep.hermitian().algebra().field();
        r.result["pfister"] = to_json(td.pfister, f);
        if (td.verdict == DecomposabilityResult::Verdict::Yes) {
            r.certificates["slots"] = to_json(td.slots);
            r.certificates["psi"] = bilinear_pfister(f, td.slots).to_string();
            if (cmd.flags.verify)
                v.check(isomorphic_inv(rep, adjoint_of(bilinear_pfister(f, td.slots), rep.hermitian().algebra()), opt),
                        "Ad(psi) (x) base is not isomorphic to the input");
        } else if (cmd.flags.verify) {
            v.check(totally_decomposable(rep, opt).verdict == td.verdict, "verdict changed on replay");
        }
    } else if (cmd.sub == "isotropic") {
        const bool iso = is_isotropic_inv(rep, opt);
        r.verdicts["isotropic"] = iso;
        if (rep.is_hermitian()) {
            const HermitianIsotropy hi = isotropy_h(rep.hermitian(), opt);
            if (hi.witness) r.certificates["witness"] = to_json(*hi.witness);
            if (cmd.flags.verify) {
                v.check(hi.witness.has_value() == iso, "hermitian witness search disagrees");
                if (hi.witness) {
                    const HermitianForm& h = rep.hermitian();
                    v.check(h.eval(*hi.witness, *hi.witness) == h.algebra().zero(), "h(x, x) != 0");
                }
            }
        }
    } else if (cmd.sub == "hyperbolic") {
        const bool hyp = is_hyperbolic_inv(rep, opt);
        r.verdicts["hyperbolic"] = hyp;
        if (rep.is_hermitian()) {
            const auto flag = hyperbolic_flag_h(rep.hermitian(), opt);
            if (flag) {
                const HermitianForm& h = rep.hermitian();
                r.certificates["isotropic_subspace"] =
                    to_json(Matrix::from_columns(h.algebra().field(), *flag, h.dim() * h.algebra().dim()));
            }
            if (cmd.flags.verify) v.check(flag.has_value() == hyp, "hermitian hyperbolic flag disagrees");
        }
    } else {
        throw Error(ErrorKind::InvalidArgument, "unknown inv subcommand '" + cmd.sub + "'");
    }
    if (cmd.flags.verify) r.verify = v.json();
    return r;
}

}  // namespace qfalg::cli
