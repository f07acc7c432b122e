#include "cxh/distribution_io.hpp"

#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

namespace cxh {

FiniteDistribution parse_distribution(std::istream& in)
{
    std::vector<Atom> atoms;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream fields(line);
        double re = 0.0;
        double im = 0.0;
        double prob = 0.0;
        if (!(fields >> re)) {
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            throw ParseError("expected `re im prob`", lineno);
        }
        if (!(fields >> im >> prob)) {
            throw ParseError("expected `re im prob`", lineno);
        }
        std::string extra;
        if (fields >> extra) {
            throw ParseError("unexpected trailing field `" + extra + "`", lineno);
        }
        atoms.push_back({Complex{re, im}, prob});
    }
    if (atoms.empty()) {
        throw ParseError("no atoms", lineno);
    }
    return FiniteDistribution(std::move(atoms));
}

FiniteDistribution read_distribution(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw DomainError("cannot open distribution file " + path.string());
    }
    return parse_distribution(in);
}

void write_distribution(std::ostream& out, const FiniteDistribution& dist)
{
    const auto old = out.precision(std::numeric_limits<double>::max_digits10);
    out << "# re im prob\n";
    for (const Atom& a : dist.atoms()) {
        out << a.point.real() << ' ' << a.point.imag() << ' ' << a.prob << '\n';
    }
    out.precision(old);
}

}  // namespace cxh
