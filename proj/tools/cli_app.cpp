#include "cli_internal.hpp"

#include <CLI11.hpp>

namespace qfalg::cli {

std::vector<std::string> split_words(const std::string& line) {
    std::vector<std::string> words;
    std::string cur;
    bool in_word = false;
    char quote = 0;
    for (const char c : line) {
        if (quote) {
            if (c == quote) quote = 0;
            else cur.push_back(c);
        } else if (c == '"' || c == '\'') {
            quote = c;
            in_word = true;
        } else if (std::isspace(static_cast<unsigned char>(c))) {
            if (in_word) words.push_back(cur);
            cur.clear();
            in_word = false;
        } else {
            cur.push_back(c);
            in_word = true;
        }
    }
    if (quote) throw Error(ErrorKind::SyntaxError, "unterminated quote");
    if (in_word) words.push_back(cur);
    return words;
}

Command parse_args(const std::vector<std::string>& argv) {
    CLI::App app{"Quadratic and hermitian forms, algebras with involution", "qfalg"};
    Command cmd;
    std::vector<std::string> words;
    std::string quat, etale, phi, dir;
    std::string out;
    app.add_option("verb", cmd.verb, "qform | herm | alg | inv | corpus")
        ->required()
        ->check(CLI::IsMember({"qform", "herm", "alg", "inv", "corpus"}));
    app.add_option("args", words, "subcommand and object literals");
    app.add_option("--seed", cmd.flags.seed, "seed for randomized searches");
    app.add_option("--search-height", cmd.flags.search_height, "height bound for rational searches")
        ->check(CLI::Range(1, 100000));
    app.add_option("--search-degree", cmd.flags.search_degree, "degree bound for function-field searches")
        ->check(CLI::Range(0, 64));
    app.add_option("--out", out, "write the JSON document to this path");
    app.add_flag("--verify", cmd.flags.verify, "replay every certificate from its raw data");
    app.add_flag("--json", cmd.flags.json, "JSON on stdout even with --out");
    app.add_option("--quat", quat, "quaternion base: a=..,b=..@F");
    app.add_option("--etale", etale, "etale base: a=..@F or split@F");
    app.add_option("--phi", phi, "bilinear form over the base field");
    app.add_option("--dir", dir, "fixture directory for corpus");

    std::vector<std::string> rev(argv.rbegin(), argv.rend() - (argv.empty() ? 0 : 1));
    app.parse(rev);

    if (!out.empty()) cmd.flags.out = out;
    if (!quat.empty()) cmd.options["quat"] = quat;
    if (!etale.empty()) cmd.options["etale"] = etale;
    if (!phi.empty()) cmd.options["phi"] = phi;
    if (!dir.empty()) cmd.options["dir"] = dir;
    if (cmd.verb != "corpus") {
        if (words.empty()) throw CLI::ValidationError("args", "missing subcommand after '" + cmd.verb + "'");
        cmd.sub = words.front();
        words.erase(words.begin());
    }
    cmd.literals = std::move(words);
    return cmd;
}

// ---------------------------------------------------------------------------

OracleOptions oracle_options(const Flags& f) {
    OracleOptions o;
    o.search_height = f.search_height;
    o.search_degree = f.search_degree;
    o.seed = f.seed;
    return o;
}

Json to_json(const Elem& e) { return e.to_string(); }

Json to_json(const Vec& v) {
    Json j = Json::array();
    for (const auto& e : v) j.push_back(e.to_string());
    return j;
}

Json to_json(const Matrix& m) {
    Json j = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(m(i, k).to_string());
        j.push_back(row);
    }
    return j;
}

Json to_json(const AlgVec& v) {
    Json j = Json::array();
    for (const auto& x : v) j.push_back(to_json(x.coords()));
    return j;
}

Json to_json(const IsotropyResult& r) {
    Json j;
    j["status"] = to_string(r.status);
    if (r.isotropic()) j["witness"] = to_json(r.witness);
    if (r.anisotropic()) {
        Json c;
        c["kind"] = to_string(r.certificate.kind);
        if (r.certificate.place) c["place"] = r.certificate.place->to_string();
        if (r.certificate.degree_bound >= 0) c["degree_bound"] = r.certificate.degree_bound;
        if (!r.certificate.detail.empty()) c["detail"] = r.certificate.detail;
        j["certificate"] = c;
    }
    if (!r.reason.empty()) j["reason"] = r.reason;
    return j;
}

Json to_json(const PfisterResult& r, const Field& f) {
    Json j;
    j["verdict"] = to_string(r.verdict);
    j["method"] = r.method;
    if (!r.detail.empty()) j["detail"] = r.detail;
    if (r.certificate) {
        Json c;
        c["scale"] = r.certificate->scale.to_string();
        if (r.certificate->binary_slot) c["binary_slot"] = r.certificate->binary_slot->to_string();
        c["bilinear_slots"] = to_json(r.certificate->bilinear_slots);
        PfisterCertificate unit = *r.certificate;
        unit.scale = f.one();
        c["pfister"] = pfister_from_certificate(f, unit).to_string();
        j["certificate"] = c;
    }
    return j;
}

const std::string& literal_arg(const Command& cmd, std::size_t i, const char* what) {
    if (i >= cmd.literals.size())
        throw Error(ErrorKind::InvalidArgument, cmd.verb + " " + cmd.sub + ": missing argument " + what);
    return cmd.literals[i];
}

const std::string& option_arg(const Command& cmd, const std::string& name) {
    const auto it = cmd.options.find(name);
    if (it == cmd.options.end()) throw Error(ErrorKind::InvalidArgument, cmd.verb + " " + cmd.sub + ": missing --" + name);
    return it->second;
}

InvolutionRep parse_involution(std::string_view text) {
    std::string_view s = text;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    if (s.size() > 4 && s.substr(0, 3) == "Ad(" && s.back() == ')') {
        const std::string_view inner = s.substr(3, s.size() - 4);
        try {
            return InvolutionRep::adjoint(parse_hermitian(inner));
        } catch (const SyntaxError&) {
            return InvolutionRep::adjoint(parse_quadratic(inner));
        }
    }
    return InvolutionRep::adjoint(parse_hermitian(s));
}

// ---------------------------------------------------------------------------

namespace {

bool is_input_error(ErrorKind k) {
    switch (k) {
        case ErrorKind::OracleUndecided:
        case ErrorKind::InternalInconsistency:
            return false;
        default:
            return true;
    }
}

Json envelope(const Command& cmd) {
    Json j;
    j["command"] = cmd.sub.empty() ? cmd.verb : cmd.verb + " " + cmd.sub;
    Json echo;
    echo["literals"] = cmd.literals;
    Json opts = Json::object();
    for (const auto& [k, v] : cmd.options) opts[k] = v;
    echo["options"] = opts;
    echo["verify"] = cmd.flags.verify;
    j["inputs_echo"] = echo;
    return j;
}

void finish(Json& j, const Command& cmd) {
    Json b;
    b["search_height"] = cmd.flags.search_height;
    b["search_degree"] = cmd.flags.search_degree;
    b["budget"] = OracleOptions{}.budget;
    j["oracle_bounds"] = b;
    j["seed"] = cmd.flags.seed;
}

Outcome failure(const Command& cmd, int code, const std::string& verdict, const std::string& kind, const std::string& msg,
                const SyntaxError* syn = nullptr) {
    Outcome o;
    o.exit_code = code;
    o.json = envelope(cmd);
    o.json["verdict"] = verdict;
    o.json["verdicts"] = Json::object();
    o.json["certificates"] = Json::object();
    Json e;
    e["kind"] = kind;
    e["message"] = msg;
    if (syn) {
        e["line"] = syn->line();
        e["col"] = syn->col();
        e["expected"] = syn->expected();
    }
    o.json["error"] = e;
    finish(o.json, cmd);
    return o;
}

}  // namespace

Outcome run(const Command& cmd) {
    try {
        Report r;
        if (cmd.verb == "qform") r = run_qform(cmd);
        else if (cmd.verb == "alg") r = run_alg(cmd);
        else if (cmd.verb == "herm") r = run_herm(cmd);
        else if (cmd.verb == "inv") r = run_inv(cmd);
        else if (cmd.verb == "corpus") r = run_corpus(cmd);
        else throw Error(ErrorKind::InvalidArgument, "unknown verb '" + cmd.verb + "'");

        Outcome o;
        o.json = envelope(cmd);
        o.json["verdict"] = r.verdict;
        o.json["verdicts"] = r.verdicts;
        o.json["result"] = r.result;
        o.json["certificates"] = r.certificates;
        if (r.verify) o.json["verify"] = *r.verify;
        finish(o.json, cmd);
        if (r.verify && !(*r.verify)["agreed"].get<bool>()) {
            o.json["verdict"] = "internal_error";
            o.exit_code = Internal;
        } else if (r.verdict == "failed") {
            o.exit_code = Internal;
        } else {
            o.exit_code = r.verdict == "decided" ? Decided : Undecided;
        }
        return o;
    } catch (const SyntaxError& e) {
        return failure(cmd, InputError, "error", "SyntaxError", e.what(), &e);
    } catch (const Error& e) {
        const std::string kind(to_string(e.kind()));
        if (e.kind() == ErrorKind::OracleUndecided) return failure(cmd, Undecided, "undecided", kind, e.what());
        if (is_input_error(e.kind())) return failure(cmd, InputError, "error", kind, e.what());
        return failure(cmd, Internal, "internal_error", kind, e.what());
    } catch (const std::exception& e) {
        return failure(cmd, Internal, "internal_error", "Exception", e.what());
    }
}

std::string render_text(const Json& doc) {
    std::string s = doc.value("command", std::string("?")) + ": " + doc.value("verdict", std::string("?")) + "\n";
    if (doc.contains("error")) s += "  " + doc["error"].value("message", std::string()) + "\n";
    if (doc.contains("verdicts"))
        for (const auto& [k, v] : doc["verdicts"].items())
            s += "  " + k + " = " + (v.is_string() ? v.get<std::string>() : v.dump()) + "\n";
    if (doc.contains("verify")) s += "  verify: " + doc["verify"].dump() + "\n";
    if (doc.contains("result") && doc["result"].contains("table")) {
        for (const auto& row : doc["result"]["table"]) {
            s += std::string(row["pass"].get<bool>() ? "  PASS " : "  FAIL ") + row["file"].get<std::string>() + ":" +
                 std::to_string(row["line"].get<std::size_t>()) + "  " + row["command"].get<std::string>() + "  => " +
                 row["got"].get<std::string>();
            if (row.contains("mismatches")) s += "  " + row["mismatches"].dump();
            s += "\n";
        }
    }
    return s;
}

}  // namespace qfalg::cli
