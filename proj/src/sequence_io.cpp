#include "nsopt/sequence_io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace nsopt {

namespace {

std::string join_coords(const Eigen::VectorXd& v) {
    std::ostringstream os;
    os << std::setprecision(17);
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (i) os << ';';
        os << v[i];
    }
    return os.str();
}

Eigen::VectorXd parse_coords(const std::string& s) {
    std::vector<double> vals;
    std::istringstream is(s);
    std::string tok;
    while (std::getline(is, tok, ';')) vals.push_back(std::stod(tok));
    if (vals.empty()) throw std::invalid_argument("sequence file: empty coordinate list");
    Eigen::VectorXd v(static_cast<Eigen::Index>(vals.size()));
    for (std::size_t i = 0; i < vals.size(); ++i) v[static_cast<Eigen::Index>(i)] = vals[i];
    return v;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream is(line);
    std::string tok;
    while (std::getline(is, tok, ',')) out.push_back(tok);
    return out;
}

} // namespace

void save_sequence(const FunctionSequence& seq, std::ostream& out) {
    seq.validate();
    const bool quad = seq.costs.front().kind == CostInstance::Kind::Quadratic;
    for (const auto& f : seq.costs)
        if ((f.kind == CostInstance::Kind::Quadratic) != quad)
            throw std::invalid_argument("save_sequence: mixed cost kinds are not supported");

    out << "# kind=" << (quad ? "quadratic" : "piecewise") << " d=" << seq.box.dim()
        << " box=" << join_coords(seq.box.lo) << ".." << join_coords(seq.box.hi) << '\n';
    out << std::setprecision(17);
    for (int t = 0; t < seq.horizon; ++t) {
        const auto& f = seq.costs[t];
        out << (t + 1) << ',';
        if (quad) {
            out << f.a;
            for (Eigen::Index i = 0; i < f.b.size(); ++i) out << ',' << f.b[i];
            out << ',' << f.c;
        } else {
            out << f.delta << ',' << f.sign;
        }
        out << '\n';
    }
}

void save_sequence(const FunctionSequence& seq, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_sequence: cannot open " + path);
    save_sequence(seq, out);
}

FunctionSequence load_sequence(std::istream& in) {
    std::string header;
    if (!std::getline(in, header) || header.rfind("# kind=", 0) != 0)
        throw std::invalid_argument("sequence file: missing header");

    std::string kind, box_spec;
    Eigen::Index d = 0;
    {
        std::istringstream is(header.substr(2));
        std::string field;
        while (is >> field) {
            const auto eq = field.find('=');
            if (eq == std::string::npos) continue;
            const std::string key = field.substr(0, eq), val = field.substr(eq + 1);
            if (key == "kind") kind = val;
            else if (key == "d") d = static_cast<Eigen::Index>(std::stol(val));
            else if (key == "box") box_spec = val;
        }
    }
    const auto dots = box_spec.find("..");
    if (kind.empty() || d < 1 || dots == std::string::npos)
        throw std::invalid_argument("sequence file: malformed header");

    FunctionSequence seq;
    seq.box = Box{parse_coords(box_spec.substr(0, dots)), parse_coords(box_spec.substr(dots + 2))};
    if (seq.box.dim() != d) throw std::invalid_argument("sequence file: box/d mismatch");

    std::string line;
    int expected_t = 1;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto tok = split_csv(line);
        if (std::stoi(tok.at(0)) != expected_t)
            throw std::invalid_argument("sequence file: epochs must be 1..T in order");
        CostInstance f;
        if (kind == "quadratic") {
            if (tok.size() != static_cast<std::size_t>(d) + 3)
                throw std::invalid_argument("sequence file: bad quadratic record");
            Eigen::VectorXd b(d);
            for (Eigen::Index i = 0; i < d; ++i) b[i] = std::stod(tok[2 + static_cast<std::size_t>(i)]);
            f = CostInstance::quadratic(std::stod(tok[1]), std::move(b), std::stod(tok.back()));
        } else if (kind == "piecewise") {
            if (d != 1 || tok.size() != 3)
                throw std::invalid_argument("sequence file: bad piecewise record");
            f = CostInstance::piecewise(std::stod(tok[1]), std::stoi(tok[2]));
        } else {
            throw std::invalid_argument("sequence file: unknown kind '" + kind + "'");
        }
        seq.costs.push_back(std::move(f));
        ++expected_t;
    }
    seq.horizon = static_cast<int>(seq.costs.size());
    if (seq.horizon == 0) throw std::invalid_argument("sequence file: no records");
    seq.generator_tag = "loaded";
    for (auto& f : seq.costs) {
        const auto [gv, gg] = cost_bounds(f, seq.box);
        f.g_value = gv;
        f.g_grad = gg;
        seq.family_g = std::max({seq.family_g, gv, gg});
    }
    seq.validate();
    return seq;
}

FunctionSequence load_sequence(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_sequence: cannot open " + path);
    return load_sequence(in);
}

} // namespace nsopt
