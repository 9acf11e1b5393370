#include <algorithm>
#include <filesystem>
#include <fstream>

#include "cli_internal.hpp"

namespace qfalg::cli {

namespace {

struct Fixture {
    std::string file;
    std::size_t line = 0;
    std::string command;
    std::string expected_verdict;
    std::vector<std::pair<std::string, std::string>> expected_values;
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

// <command words> => <verdict> [key=value ...]
std::vector<Fixture> load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::InvalidArgument, "cannot read " + path.string());
    std::vector<Fixture> out;
    std::string raw;
    for (std::size_t n = 1; std::getline(in, raw); ++n) {
        const std::string line = trim(raw);
        if (line.empty() || line.front() == '#') continue;
        const auto arrow = line.rfind("=>");
        if (arrow == std::string::npos)
            throw Error(ErrorKind::SyntaxError, path.filename().string() + ":" + std::to_string(n) + ": missing '=>'");
        Fixture f;
        f.file = path.filename().string();
        f.line = n;
        f.command = trim(line.substr(0, arrow));
        const auto words = split_words(line.substr(arrow + 2));
        if (words.empty())
            throw Error(ErrorKind::SyntaxError, f.file + ":" + std::to_string(n) + ": missing expected verdict");
        f.expected_verdict = words[0];
        for (std::size_t i = 1; i < words.size(); ++i) {
            const auto eq = words[i].find('=');
            if (eq == std::string::npos)
                throw Error(ErrorKind::SyntaxError, f.file + ":" + std::to_string(n) + ": expected key=value, got " + words[i]);
            f.expected_values.emplace_back(words[i].substr(0, eq), words[i].substr(eq + 1));
        }
        out.push_back(std::move(f));
    }
    return out;
}

// Fixture words lose their quotes, so compare against a quote-free rendering.
std::string plain(const Json& v) {
    std::string s = v.is_string() ? v.get<std::string>() : v.dump();
    std::erase(s, '"');
    return s;
}

bool has_flag(const std::vector<std::string>& words, const std::string& flag) {
    return std::find(words.begin(), words.end(), flag) != words.end();
}

}  // namespace

Report run_corpus(const Command& cmd) {
    const auto it = cmd.options.find("dir");
    const std::filesystem::path dir = it == cmd.options.end() ? std::filesystem::path("fixtures") : std::filesystem::path(it->second);
    if (!std::filesystem::is_directory(dir)) throw Error(ErrorKind::InvalidArgument, "no fixture directory " + dir.string());
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(dir))
        if (e.path().extension() == ".txt") files.push_back(e.path());
    std::sort(files.begin(), files.end());

    Json table = Json::array();
    Json documents = Json::array();
    std::size_t passed = 0, total = 0;
    for (const auto& file : files) {
        for (const Fixture& fx : load(file)) {
            std::vector<std::string> argv{"qfalg"};
            const auto words = split_words(fx.command);
            argv.insert(argv.end(), words.begin(), words.end());
            Command sub = parse_args(argv);
            // Corpus-level flags apply unless the line sets its own.
            if (!has_flag(words, "--seed")) sub.flags.seed = cmd.flags.seed;
            if (!has_flag(words, "--search-height")) sub.flags.search_height = cmd.flags.search_height;
            if (!has_flag(words, "--search-degree")) sub.flags.search_degree = cmd.flags.search_degree;
            sub.flags.verify = sub.flags.verify || cmd.flags.verify;
            if (sub.verb == "corpus") throw Error(ErrorKind::InvalidArgument, fx.file + ": nested corpus command");

            const Outcome o = run(sub);
            const std::string got = o.json["verdict"].get<std::string>();
            bool ok = got == fx.expected_verdict;
            Json mismatches = Json::array();
            if (!ok) mismatches.push_back("verdict: " + got);
            for (const auto& [key, want] : fx.expected_values) {
                const Json& vs = o.json["verdicts"];
                const std::string have = vs.contains(key) ? plain(vs[key]) : std::string("<missing>");
                if (have != want) {
                    ok = false;
                    mismatches.push_back(key + ": " + have);
                }
            }
            if (o.json.contains("verify") && !o.json["verify"]["agreed"].get<bool>()) {
                ok = false;
                mismatches.push_back("verify failed");
            }
            Json row;
            row["file"] = fx.file;
            row["line"] = fx.line;
            row["command"] = fx.command;
            row["expected"] = fx.expected_verdict;
            row["got"] = got;
            row["exit_code"] = o.exit_code;
            row["pass"] = ok;
            if (!ok) row["mismatches"] = mismatches;
            table.push_back(row);
            documents.push_back(o.json);
            ++total;
            if (ok) ++passed;
        }
    }
    Report r;
    r.verdict = passed == total ? "decided" : "failed";
    r.verdicts["total"] = total;
    r.verdicts["passed"] = passed;
    r.verdicts["failed"] = total - passed;
    r.result["table"] = table;
    r.result["documents"] = documents;
    return r;
}

}  // namespace qfalg::cli
