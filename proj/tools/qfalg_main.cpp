#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "cli_app.hpp"

int main(int argc, char** argv) {
    using namespace qfalg::cli;
    Command cmd;
    try {
        cmd = parse_args(std::vector<std::string>(argv, argv + argc));
    } catch (const CLI::CallForHelp&) {
        std::cout << "usage: qfalg <qform|herm|alg|inv|corpus> <subcommand> <literals...> [flags]\n"
                     "  qform witt|invariants|isotropic|hyperbolic|pfister <qform>\n"
                     "  qform isometric <qform> <qform>\n"
                     "  alg info <algebra>\n"
                     "  herm trace-form|diagonalize|isotropic|hyperbolic <hermitian>\n"
                     "  herm isometric <hermitian> <hermitian>\n"
                     "  inv battery symplectic --quat a=..,b=..@F --phi <bilinear>\n"
                     "  inv battery unitary --etale a=..@F --phi <bilinear>\n"
                     "  inv decompose|totally-decomposable|isotropic|hyperbolic <involution>\n"
                     "  inv isomorphic <involution> <involution>\n"
                     "  corpus [--dir fixtures]\n"
                     "flags: --seed N --search-height N --search-degree N --out PATH --verify --json\n";
        return Decided;
    } catch (const CLI::ParseError& e) {
        std::cerr << "qfalg: " << e.what() << "\n";
        return InputError;
    }
    const Outcome o = run(cmd);
    const std::string doc = o.json.dump(2) + "\n";
    if (cmd.flags.out) {
        std::ofstream f(*cmd.flags.out);
        if (!f) {
            std::cerr << "qfalg: cannot write " << *cmd.flags.out << "\n";
            return InputError;
        }
        f << doc;
        std::cout << (cmd.flags.json ? doc : render_text(o.json));
    } else {
        std::cout << doc;
    }
    return o.exit_code;
}
