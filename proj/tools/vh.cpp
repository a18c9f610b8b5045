// Command line front-end: compute braid matrices on weight spaces, list
// bases, convert homology vectors between bases, run the verification
// suites, and specialize or evaluate parameters.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "vermahom/checks.hpp"

using namespace vermahom;

namespace {

struct JobConfig {
    std::string command;
    int n = 2;
    int r = 0;
    int rmax = -1;
    std::string word;
    std::string basis = "A";
    std::string colors = "distinct";
    std::string subst;
    std::string eval;
    std::string format = "json";
    std::string out;
    std::string in;
    std::string from;
    std::string to;
    std::string suite;
    bool endo = false;

    Json to_json() const
    {
        Json j;
        j["command"] = command;
        j["n"] = n;
        j["r"] = r;
        j["rmax"] = rmax;
        j["word"] = word;
        j["basis"] = basis;
        j["colors"] = colors;
        j["subst"] = subst;
        j["eval"] = eval;
        j["format"] = format;
        j["out"] = out;
        j["in"] = in;
        j["from"] = from;
        j["to"] = to;
        j["suite"] = suite;
        j["endo"] = endo;
        return j;
    }

    static JobConfig from_json(const Json& j)
    {
        JobConfig c;
        c.command = j.at("command").get<std::string>();
        c.n = j.at("n").get<int>();
        c.r = j.at("r").get<int>();
        c.rmax = j.at("rmax").get<int>();
        c.word = j.at("word").get<std::string>();
        c.basis = j.at("basis").get<std::string>();
        c.colors = j.at("colors").get<std::string>();
        c.subst = j.at("subst").get<std::string>();
        c.eval = j.at("eval").get<std::string>();
        c.format = j.at("format").get<std::string>();
        c.out = j.at("out").get<std::string>();
        c.in = j.at("in").get<std::string>();
        c.from = j.at("from").get<std::string>();
        c.to = j.at("to").get<std::string>();
        c.suite = j.at("suite").get<std::string>();
        c.endo = j.at("endo").get<bool>();
        return c;
    }
};

void write_output(const std::string& path, const std::string& text)
{
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw std::runtime_error("cannot open output file " + path);
    f << text;
}

// "tt=q^-2,s2=s1" -> ring hom; each right hand side is a signed monomial.
RingHom parse_subst(const VarsPtr& vars, const std::string& text)
{
    RingHom h = RingHom::identity(vars);
    std::vector<SignedMonomial> images;
    for (int i = 0; i < vars->size(); ++i) {
        ExpVec e(vars->size(), 0);
        e[i] = 1;
        images.push_back({1, std::move(e)});
    }
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos)
            throw CLI::ValidationError("--subst", "expected var=monomial in '" + item + "'");
        std::string lhs = item.substr(0, eq), rhs = item.substr(eq + 1);
        auto src = vars->index_of(lhs);
        if (!src)
            throw CLI::ValidationError("--subst", "unknown variable '" + lhs + "'");
        SignedMonomial m{1, ExpVec(vars->size(), 0)};
        size_t pos = 0;
        if (pos < rhs.size() && (rhs[pos] == '+' || rhs[pos] == '-')) {
            if (rhs[pos] == '-')
                m.sign = -1;
            ++pos;
        }
        while (pos < rhs.size()) {
            if (rhs[pos] == '*') {
                ++pos;
                continue;
            }
            size_t start = pos;
            while (pos < rhs.size() && (std::isalnum(rhs[pos])))
                ++pos;
            std::string name = rhs.substr(start, pos - start);
            if (name == "1")
                continue;
            int power = 1;
            if (pos < rhs.size() && rhs[pos] == '^') {
                ++pos;
                size_t pstart = pos;
                if (pos < rhs.size() && (rhs[pos] == '-' || rhs[pos] == '+'))
                    ++pos;
                while (pos < rhs.size() && std::isdigit(rhs[pos]))
                    ++pos;
                power = std::stoi(rhs.substr(pstart, pos - pstart));
            }
            auto tgt = vars->index_of(name);
            if (!tgt)
                throw CLI::ValidationError("--subst", "unknown variable '" + name + "' in '" + rhs + "'");
            m.exps[*tgt] += power;
        }
        images[*src] = std::move(m);
    }
    return RingHom(vars, vars, std::move(images));
}

bool parse_complex(const std::string& s, std::complex<double>& out)
{
    // forms: "1.5", "-2", "0.3+0.2i", "1i", "-i"
    if (s.find('i') == std::string::npos) {
        try {
            out = {std::stod(s), 0.0};
            return true;
        } catch (...) {
            return false;
        }
    }
    std::string t = s;
    double re = 0, im = 0;
    size_t split = std::string::npos;
    for (size_t p = 1; p < t.size(); ++p)
        if ((t[p] == '+' || t[p] == '-') && t[p - 1] != 'e' && t[p - 1] != 'E')
            split = p;
    try {
        std::string im_part;
        if (split == std::string::npos) {
            im_part = t;
        } else {
            re = std::stod(t.substr(0, split));
            im_part = t.substr(split);
        }
        im_part.erase(im_part.find('i'), 1);
        if (im_part.empty() || im_part == "+")
            im = 1;
        else if (im_part == "-")
            im = -1;
        else
            im = std::stod(im_part);
        out = {re, im};
        return true;
    } catch (...) {
        return false;
    }
}

// "q=1/2,tt=-1,s1=2" -> per-variable values; rational when every value is
// rational, complex otherwise.
struct EvalSpec {
    bool complex_mode = false;
    std::vector<Rational> rat;
    std::vector<std::complex<double>> cplx;
};

EvalSpec parse_eval(const VarsPtr& vars, const std::string& text)
{
    EvalSpec ev;
    std::vector<std::string> raw(vars->size(), "1");
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos)
            throw CLI::ValidationError("--eval", "expected var=value in '" + item + "'");
        auto idx = vars->index_of(item.substr(0, eq));
        if (!idx)
            throw CLI::ValidationError("--eval", "unknown variable '" + item.substr(0, eq) + "'");
        raw[*idx] = item.substr(eq + 1);
    }
    for (const auto& v : raw)
        if (v.find('i') != std::string::npos || v.find('.') != std::string::npos ||
            v.find('e') != std::string::npos)
            ev.complex_mode = true;
    if (ev.complex_mode) {
        for (const auto& v : raw) {
            std::complex<double> z;
            if (!parse_complex(v, z))
                throw CLI::ValidationError("--eval", "cannot parse value '" + v + "'");
            ev.cplx.push_back(z);
        }
    } else {
        for (const auto& v : raw) {
            try {
                auto slash = v.find('/');
                if (slash == std::string::npos)
                    ev.rat.emplace_back(BigInt(v));
                else
                    ev.rat.emplace_back(BigInt(v.substr(0, slash)), BigInt(v.substr(slash + 1)));
            } catch (const std::exception&) {
                throw CLI::ValidationError("--eval", "cannot parse value '" + v + "'");
            }
        }
    }
    return ev;
}

std::string format_complex(std::complex<double> z)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g%+.12gi", z.real(), z.imag());
    return buf;
}

std::string matrix_csv(const OperatorMatrix& m)
{
    std::ostringstream out;
    for (int i = 0; i < m.mat.rows(); ++i) {
        for (int j = 0; j < m.mat.cols(); ++j)
            out << (j ? "," : "") << to_string(m.mat.at(i, j));
        out << "\n";
    }
    if (!m.denominator.is_one())
        out << "denominator," << to_string(m.denominator) << "\n";
    return out.str();
}

int run_matrix(const JobConfig& cfg)
{
    const VarsPtr vars = VariableSet::with_colors(cfg.n);
    BraidWord word = BraidWord::parse(cfg.n, cfg.word);
    Basis basis = basis_from_name(cfg.basis);
    if (basis != Basis::VermaTensor && basis != Basis::A && basis != Basis::U)
        throw CLI::ValidationError("--basis", "braid matrices are computed in basis U, A or verma");
    const bool unicolor = cfg.colors == "unicolor";
    if (cfg.endo && !unicolor && !word.is_pure()) {
        auto p = word.permutation();
        std::string ps;
        for (int i = 0; i < cfg.n; ++i)
            ps += (i ? " " : "") + std::to_string(i + 1) + "->" + std::to_string(p[i]);
        std::cerr << "error: word '" << word.str() << "' is not pure (permutation " << ps
                  << "); with distinct colors only pure braids are endomorphisms\n";
        return 2;
    }

    OperatorMatrix m = braid_matrix(word, cfg.r, basis, unicolor);
    if (!cfg.subst.empty())
        m = specialize_matrix(m, parse_subst(vars, cfg.subst));

    if (!cfg.eval.empty()) {
        EvalSpec ev = parse_eval(vars, cfg.eval);
        std::ostringstream out;
        if (ev.complex_mode) {
            auto num = evaluate_matrix(m, ev.cplx);
            for (const auto& row : num) {
                for (size_t j = 0; j < row.size(); ++j)
                    out << (j ? "," : "") << format_complex(row[j]);
                out << "\n";
            }
        } else {
            auto num = evaluate_matrix_rational(m, ev.rat);
            for (const auto& row : num) {
                for (size_t j = 0; j < row.size(); ++j)
                    out << (j ? "," : "") << row[j].str();
                out << "\n";
            }
        }
        write_output(cfg.out, out.str());
        return 0;
    }

    write_output(cfg.out, cfg.format == "csv" ? matrix_csv(m) : matrix_to_json(m).dump() + "\n");
    return 0;
}

int run_basis(const JobConfig& cfg)
{
    std::ostringstream out;
    const auto basis = composition_basis(cfg.n, cfg.r);
    for (const auto& idx : basis) {
        out << "(";
        for (size_t i = 0; i < idx.size(); ++i)
            out << (i ? "," : "") << idx[i];
        out << ")\n";
    }
    out << "count=" << basis.size() << "\n";
    write_output(cfg.out, out.str());
    return 0;
}

int run_change_basis(const JobConfig& cfg)
{
    std::ifstream f(cfg.in);
    if (!f)
        throw std::runtime_error("cannot open input file " + cfg.in);
    Json j = Json::parse(f);
    HVector v = hvector_from_json(j);
    if (!cfg.from.empty())
        v.basis = basis_from_name(cfg.from);
    HVector w = change_basis(v, basis_from_name(cfg.to));
    write_output(cfg.out, hvector_to_json(w).dump() + "\n");
    return 0;
}

int run_check(const JobConfig& cfg)
{
    const int rmax = cfg.rmax >= 0 ? cfg.rmax : 2;
    Report rep;
    if (cfg.suite == "relations") {
        rep = checks::braid_relations(cfg.n, rmax, /*unicolor=*/false);
        if (rep.ok)
            rep = checks::braid_relations(cfg.n, rmax, /*unicolor=*/true);
    } else if (cfg.suite == "hopf") {
        rep = checks::hopf(cfg.n, rmax);
    } else if (cfg.suite == "monoidality") {
        rep = checks::monoidality(cfg.n, rmax);
    } else if (cfg.suite == "kohno") {
        if (cfg.n < 2)
            throw CLI::ValidationError("--n", "the kohno suite needs at least two strands");
        std::vector<std::pair<int, int>> cases;
        for (int r = 1; r <= rmax; ++r)
            cases.emplace_back(cfg.n, r);
        rep = checks::kohno(cases);
    } else if (cfg.suite == "bridge") {
        rep = checks::bridge(cfg.rmax >= 0 ? cfg.rmax : 8);
    } else if (cfg.suite == "basis-change") {
        rep = checks::basis_change(cfg.n, cfg.r);
    } else {
        throw CLI::ValidationError("suite", "unknown suite '" + cfg.suite +
                                            "' (relations|hopf|monoidality|kohno|bridge|basis-change)");
    }
    if (rep.ok) {
        std::cout << "pass: " << cfg.suite << "\n";
        return 0;
    }
    std::cout << "FAIL: " << cfg.suite << ": " << rep.detail << "\n";
    return 1;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"exact braid representations on Verma weight spaces"};
    app.require_subcommand(1);
    JobConfig cfg;

    auto* basis_cmd = app.add_subcommand("basis", "list the composition index basis of W_{n,r}");
    basis_cmd->add_option("--n", cfg.n, "strand count")->required();
    basis_cmd->add_option("--r", cfg.r, "subweight")->required();
    basis_cmd->add_option("--out", cfg.out, "output path (default stdout)");

    auto* matrix_cmd = app.add_subcommand("matrix", "matrix of a braid word on W_{n,r}");
    matrix_cmd->add_option("--word", cfg.word, "braid word, e.g. \"s1 s2^-1 s1\"")->required();
    matrix_cmd->add_option("--n", cfg.n, "strand count")->required();
    matrix_cmd->add_option("--r", cfg.r, "subweight")->required();
    matrix_cmd->add_option("--basis", cfg.basis, "U | A | verma (default A)");
    matrix_cmd->add_option("--colors", cfg.colors, "distinct | unicolor (default distinct)")
        ->check(CLI::IsMember({"distinct", "unicolor"}));
    matrix_cmd->add_option("--subst", cfg.subst, "ring substitution, e.g. \"tt=q^-2\"");
    matrix_cmd->add_option("--eval", cfg.eval, "numeric evaluation, e.g. \"q=1/2,s1=2\"");
    matrix_cmd->add_option("--format", cfg.format, "json | csv (default json)")
        ->check(CLI::IsMember({"json", "csv"}));
    matrix_cmd->add_option("--out", cfg.out, "output path (default stdout)");
    matrix_cmd->add_flag("--endo", cfg.endo, "require the word to act as an endomorphism");

    auto* check_cmd = app.add_subcommand("check", "run a verification suite");
    check_cmd->add_option("suite", cfg.suite, "relations|hopf|monoidality|kohno|bridge|basis-change")
        ->required();
    check_cmd->add_option("--n", cfg.n, "strand count bound");
    check_cmd->add_option("--r", cfg.r, "subweight (basis-change)");
    check_cmd->add_option("--rmax", cfg.rmax, "subweight bound");

    auto* change_cmd = app.add_subcommand("change-basis", "convert a homology vector between bases");
    change_cmd->add_option("--in", cfg.in, "input HVector JSON file")->required();
    change_cmd->add_option("--from", cfg.from, "override the input basis tag");
    change_cmd->add_option("--to", cfg.to, "target basis tag")->required();
    change_cmd->add_option("--out", cfg.out, "output path (default stdout)");

    auto* config_cmd = app.add_subcommand("dump-config", "echo the parsed job configuration");
    config_cmd->add_option("--n", cfg.n, "");
    config_cmd->add_option("--r", cfg.r, "");
    config_cmd->add_option("--word", cfg.word, "");
    config_cmd->add_option("--basis", cfg.basis, "");
    config_cmd->add_option("--colors", cfg.colors, "");
    config_cmd->add_option("--out", cfg.out, "");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (basis_cmd->parsed()) {
            cfg.command = "basis";
            return run_basis(cfg);
        }
        if (matrix_cmd->parsed()) {
            cfg.command = "matrix";
            return run_matrix(cfg);
        }
        if (check_cmd->parsed()) {
            cfg.command = "check";
            return run_check(cfg);
        }
        if (change_cmd->parsed()) {
            cfg.command = "change-basis";
            return run_change_basis(cfg);
        }
        if (config_cmd->parsed()) {
            cfg.command = "dump-config";
            write_output(cfg.out, JobConfig::from_json(cfg.to_json()).to_json().dump() + "\n");
            return 0;
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
