#pragma once

// Command parsing and dispatch for the qfalg executable. One Command in, one JSON
// document out; the executable and the corpus runner share this path.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace qfalg::cli {

using Json = nlohmann::ordered_json;

enum ExitCode : int { Decided = 0, Undecided = 1, InputError = 2, Internal = 3 };

struct Flags {
    std::uint64_t seed = 0x5eed;
    int search_height = 50;
    int search_degree = 2;
    bool verify = false;
    bool json = false;
    std::optional<std::string> out;
};

struct Command {
    std::string verb;  // qform | herm | alg | inv | corpus
    std::string sub;   // e.g. witt; for inv battery: "battery symplectic"
    std::vector<std::string> literals;
    std::map<std::string, std::string> options;  // --quat, --etale, --phi, --dir
    Flags flags;
};

struct Outcome {
    int exit_code = Decided;
    Json json;
};

// Throws CLI::ParseError (help requested or malformed argv).
Command parse_args(const std::vector<std::string>& argv);

// Never throws: library errors become exit 2 (input) or 3 (internal).
Outcome run(const Command& cmd);

// Human-readable summary derived from the JSON document.
std::string render_text(const Json& doc);

// Whitespace-separated words; double or single quotes group.
std::vector<std::string> split_words(const std::string& line);

}  // namespace qfalg::cli
