#include "pscl/modelfile.hpp"

#include <fstream>
#include <sstream>

#include "pscl/parse.hpp"

namespace pscl {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

Generator parse_generator_key(const std::string& key, int lineno) {
    Expression e = parse(key);
    auto gens = e.generators();
    if (gens.size() != 1 || e.den() != Poly(Rational(1)) || e.num().terms().size() != 1)
        throw ModelFileError("line " + std::to_string(lineno) +
                             ": constraint key must be a single generator");
    return *gens.begin();
}

}  // namespace

ModelSpec parse_model_text(const std::string& text, const std::string& name) {
    ModelSpec spec;
    spec.name = name;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    bool have_qr[5] = {false, false, false, false, false};
    FTable ft;
    int have_f = 0;

    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[' && line.back() == ']') {
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ModelFileError("line " + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        try {
            if (section == "model") {
                if (key == "field") {
                    spec.model.field = val;
                } else if (key == "evolution") {
                    spec.model.evolution = parse(val);
                } else if (key.rfind("constraint ", 0) == 0) {
                    Generator g = parse_generator_key(trim(key.substr(11)), lineno);
                    spec.model.constraints.insert_or_assign(g, parse(val));
                } else if (key.rfind("trig_dx ", 0) == 0) {
                    spec.model.trig[trim(key.substr(8))].dx = parse(val);
                } else if (key.rfind("trig_dt ", 0) == 0) {
                    spec.model.trig[trim(key.substr(8))].dt = parse(val);
                } else {
                    throw ModelFileError("line " + std::to_string(lineno) +
                                         ": unknown [model] key '" + key + "'");
                }
            } else if (section == "qr") {
                Expression e = parse(val);
                if (key == "q") { spec.qr.q = e; have_qr[0] = true; }
                else if (key == "r") { spec.qr.r = e; have_qr[1] = true; }
                else if (key == "A") { spec.qr.A = e; have_qr[2] = true; }
                else if (key == "B") { spec.qr.B = e; have_qr[3] = true; }
                else if (key == "C") { spec.qr.C = e; have_qr[4] = true; }
                else throw ModelFileError("line " + std::to_string(lineno) +
                                          ": unknown [qr] key '" + key + "'");
            } else if (section == "f") {
                if (key.size() == 3 && key[0] == 'f' && key[1] >= '1' && key[1] <= '3' &&
                    key[2] >= '1' && key[2] <= '2') {
                    ft.f[key[1] - '1'][key[2] - '1'] = parse(val);
                    ++have_f;
                } else {
                    throw ModelFileError("line " + std::to_string(lineno) +
                                         ": unknown [f] key '" + key + "'");
                }
            } else if (section == "solution") {
                if (key == "name") spec.solution = val;
                else if (key == "amplitude") spec.amplitude = std::stod(val);
                else throw ModelFileError("line " + std::to_string(lineno) +
                                          ": unknown [solution] key '" + key + "'");
            } else {
                throw ModelFileError("line " + std::to_string(lineno) +
                                     ": content outside a known section");
            }
        } catch (const ParseError& pe) {
            throw ModelFileError("line " + std::to_string(lineno) + ": " + pe.what());
        }
    }
    if (spec.model.field.empty())
        throw ModelFileError("missing [model] field");
    for (bool b : have_qr)
        if (!b) throw ModelFileError("incomplete [qr] section (need q, r, A, B, C)");
    if (have_f == 6) spec.ftable = ft;
    else if (have_f != 0) throw ModelFileError("incomplete [f] section (need all six entries)");
    return spec;
}

ModelSpec load_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ModelFileError("cannot open model file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    std::string base = path;
    if (auto p = base.find_last_of('/'); p != std::string::npos) base = base.substr(p + 1);
    if (auto p = base.rfind(".model"); p != std::string::npos) base = base.substr(0, p);
    return parse_model_text(ss.str(), base);
}

}  // namespace pscl
