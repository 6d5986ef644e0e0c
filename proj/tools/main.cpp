#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "riclag/lagrangian.hpp"
#include "riclag/numeric.hpp"

using namespace riclag;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitPolicy = 3;
constexpr int kExitVerification = 4;
constexpr int kExitBlowup = 5;

RenderFormat parse_format(const std::string& f) {
    if (f == "plain") return RenderFormat::Plain;
    if (f == "latex") return RenderFormat::Latex;
    if (f == "sexpr") return RenderFormat::Sexpr;
    throw CLI::ValidationError("--format must be plain, latex or sexpr");
}

int max_order_cap() {
    if (const char* env = std::getenv("RVL_MAX_ORDER")) return std::atoi(env);
    return 7;
}

int check_order(int N) {
    if (N < 1) {
        std::cerr << "error: --order must be a positive integer\n";
        return kExitUsage;
    }
    int cap = max_order_cap();
    if (N > cap) {
        std::cerr << "error: order " << N << " exceeds RVL_MAX_ORDER=" << cap << "\n";
        return kExitUsage;
    }
    if (N > 7)
        std::cerr << "warning: order " << N
                  << " generates combinatorially many terms; expect long runtimes\n";
    return 0;
}

// Lines "aJ = <sexpr>"; unlisted coefficients stay symbolic.
std::vector<Expr> load_alphas(int N, const std::string& path) {
    std::vector<Expr> alphas = symbolic_alphas(N);
    if (path.empty()) return alphas;
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open alpha table '" + path + "'");
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": expected 'aJ = <sexpr>'");
        std::string name = line.substr(0, eq);
        name.erase(0, name.find_first_not_of(" \t"));
        name.erase(name.find_last_not_of(" \t") + 1);
        if (name.size() < 2 || name[0] != 'a')
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": coefficient name must be aJ");
        int j = std::stoi(name.substr(1));
        if (j < 0 || j > N)
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": index out of range for order " +
                                     std::to_string(N));
        alphas[j] = parse_sexpr(line.substr(eq + 1));
    }
    return alphas;
}

// Lines "rI = <sexpr>", i = 0..n contiguous.
LinearOperator load_operator(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open operator file '" + path + "'");
    std::map<int, Expr> coeffs;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": expected 'rI = <sexpr>'");
        std::string name = line.substr(0, eq);
        name.erase(0, name.find_first_not_of(" \t"));
        name.erase(name.find_last_not_of(" \t") + 1);
        if (name.size() < 2 || name[0] != 'r')
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": coefficient name must be rI");
        coeffs[std::stoi(name.substr(1))] = parse_sexpr(line.substr(eq + 1));
    }
    if (coeffs.empty()) throw std::runtime_error(path + ": no coefficients");
    int n = coeffs.rbegin()->first;
    std::vector<Expr> list;
    for (int i = 0; i <= n; ++i) {
        auto it = coeffs.find(i);
        list.push_back(it == coeffs.end() ? Expr::integer(0) : it->second);
    }
    return make_operator(std::move(list));
}

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(12) << v;
    return os.str();
}

void write_csv(const Trajectory& traj, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
    out << "x";
    for (int k = 0; k < traj.order; ++k) out << ", v" << k;
    out << "\n";
    for (std::size_t i = 0; i < traj.xs.size(); ++i) {
        out << fmt(traj.xs[i]);
        for (int k = 0; k < traj.order; ++k) out << ", " << fmt(traj.values[i][k]);
        out << "\n";
    }
}

struct Options {
    int order = 0;
    std::string alphas_path;
    std::string format = "latex";
    std::string operator_path;
    std::string recurrence;
    std::string out_path;
    bool certify = false;
    bool reduce_gauge = false;
    // numeric
    double a0 = 0.0, a1 = 0.0;
    std::vector<double> range = {0.0, 1.0};
    double step = 1e-3;
    double eps = 1e-4;
    double w0 = 0.0;
    double y0 = 1.0, dy0 = 0.0;
    bool perturb = false;
};

std::ostream& out_stream(const Options& opt, std::ofstream& file) {
    if (opt.out_path.empty()) return std::cout;
    file.open(opt.out_path);
    if (!file) throw std::runtime_error("cannot open output file '" + opt.out_path + "'");
    return file;
}

int cmd_generate(const Options& opt) {
    if (int rc = check_order(opt.order)) return rc;
    auto eq = build_chain_equation(opt.order, load_alphas(opt.order, opt.alphas_path));
    std::ofstream file;
    out_stream(opt, file) << render(eq.lhs, parse_format(opt.format)) << " = 0\n";
    return 0;
}

int cmd_linearize(const Options& opt) {
    if (int rc = check_order(opt.order)) return rc;
    auto eq = build_chain_equation(opt.order, load_alphas(opt.order, opt.alphas_path));
    auto op = linearize(eq);
    std::ofstream file;
    auto& os = out_stream(opt, file);
    os << render(op.apply("y"), parse_format(opt.format)) << " = 0\n";
    if (opt.certify) {
        Expr cert = linearization_certificate(eq);
        os << "certificate=" << render(cert, RenderFormat::Sexpr) << "\n";
        if (!is_zero(cert)) return kExitVerification;
    }
    return 0;
}

int cmd_selfadjoint(const Options& opt) {
    std::ofstream file;
    auto& os = out_stream(opt, file);
    if (!opt.recurrence.empty()) {
        std::string spec = opt.recurrence;
        if (spec.rfind("n=", 0) == 0) spec = spec.substr(2);
        int n = std::stoi(spec);
        if (n < 1) {
            std::cerr << "error: --recurrence needs n >= 1\n";
            return kExitUsage;
        }
        os << format_audit(recurrence_audit(n));
        return 0;
    }
    if (opt.operator_path.empty()) {
        std::cerr << "error: selfadjoint needs --operator <file> or --recurrence n=<k>\n";
        return kExitUsage;
    }
    LinearOperator M = load_operator(opt.operator_path);
    bool sa = is_self_adjoint(M);
    os << "self-adjoint: " << (sa ? "yes" : "no") << "\n";
    if (M.order == 4 && !sa) {
        // order-4 condition residuals
        Expr c1 = normalize(M.coeffs[1] - 2 * differentiate(M.coeffs[0]));
        Expr q = normalize(M.coeffs[2] - differentiate(M.coeffs[0], 2));
        Expr c2 = normalize(differentiate(q) - M.coeffs[3]);
        os << "condition r1-2r0': " << render(c1, RenderFormat::Sexpr) << "\n";
        os << "condition q'-r3: " << render(c2, RenderFormat::Sexpr) << "\n";
    }
    LinearOperator N = adjoint(M);
    os << "adjoint: " << render(N.apply("z"), parse_format(opt.format)) << "\n";
    return 0;
}

int cmd_lagrangian(const Options& opt) {
    if (int rc = check_order(opt.order)) return rc;
    if (opt.order % 2 == 0) {
        std::cerr << "error: even-order chain equations linearize to odd-order "
                     "equations and carry no Lagrangian here; only odd orders are "
                     "supported\n";
        return kExitPolicy;
    }
    auto alphas = load_alphas(opt.order, opt.alphas_path);
    Expr a = Expr::constant("a");
    Lagrangian L = opt.order == 1 ? riccati_lagrangian(alphas, a)
                                  : general_odd_lagrangian((opt.order + 1) / 2, alphas, a);
    RenderFormat f = parse_format(opt.format);
    std::ofstream file;
    auto& os = out_stream(opt, file);
    os << "L = " << render(L.expr, f) << "\n";

    if (opt.reduce_gauge) {
        // linear-equation Lagrangian with the standard gauge term removed
        LinearOperator op = linearize(build_chain_equation(opt.order, alphas));
        Lagrangian Ly =
            make_lagrangian(Expr::sym("y", 0) * op.apply("y"), "y");
        Expr g = Expr::sym("y", 0) * Expr::sym("y", op.order - 1);
        Lagrangian red = gauge_subtract(Ly, g);
        os << "reduced = " << render(red.expr, f) << "\n";
    }

    auto eq = build_chain_equation(opt.order, alphas);
    auto v = verify_eom(L, eq.lhs);
    if (v.ok) {
        os << "factor=" << render(v.factor, RenderFormat::Sexpr) << "\n";
        return 0;
    }
    os << "residual=" << render(v.residual, RenderFormat::Sexpr) << "\n";
    os << "note: the linearized operator is not self-adjoint for these "
          "coefficients, so the ansatz need not reproduce the equation of motion\n";
    return kExitVerification;
}

int cmd_numeric_riccati(const Options& opt) {
    Binding binding;
    binding.bind_constant("a0", opt.a0);
    binding.bind_constant("a1", opt.a1);
    auto eq = build_chain_equation(1, symbolic_alphas(1));
    Expr rhs = normalize(Expr::sym("w", 1) - eq.lhs);
    Trajectory traj = integrate(rhs, "w", 1, binding, opt.range[0], opt.range[1],
                                opt.step, {opt.w0});
    if (!opt.out_path.empty()) write_csv(traj, opt.out_path);
    std::cout << "w(" << fmt(traj.back_x()) << ") = " << fmt(traj.values.back()[0])
              << "\n";
    if (traj.truncated) {
        std::cout << "blow-up: trajectory truncated at x = " << fmt(traj.back_x())
                  << "\n";
        return kExitBlowup;
    }
    return 0;
}

int cmd_numeric_colehopf(const Options& opt) {
    Binding binding;
    binding.bind_constant("a0", opt.a0);
    binding.bind_constant("a1", opt.a1);
    // y'' + a1 y' + a0 y = 0
    Expr rhs = normalize(-(Expr::sym("a1", 0) * Expr::sym("y", 1) +
                           Expr::sym("a0", 0) * Expr::sym("y", 0)));
    Trajectory y_traj = integrate(rhs, "y", 2, binding, opt.range[0], opt.range[1],
                                  opt.step, {opt.y0, opt.dy0});
    if (!opt.out_path.empty()) write_csv(y_traj, opt.out_path);
    double dev = cole_hopf_consistency(y_traj, symbolic_alphas(1), binding);
    std::cout << "deviation = " << fmt(dev) << "\n";
    return 0;
}

int cmd_numeric_variation(const Options& opt) {
    Binding binding;
    // oscillator: L = y^2 - y'^2, equation y'' = -y
    Lagrangian L = make_lagrangian(
        Expr::pow(Expr::sym("y", 0), 2) - Expr::pow(Expr::sym("y", 1), 2), "y");
    double xa = 0.0, xb = std::acos(-1.0);
    Trajectory traj;
    if (opt.perturb) {
        traj = sample_trajectory(
            "y", 2,
            {[](double x) { return std::cos(x) + 0.1 * x; },
             [](double x) { return -std::sin(x) + 0.1; },
             [](double x) { return -std::cos(x); }},
            xa, xb, opt.step);
    } else {
        traj = integrate(normalize(-Expr::sym("y", 0)), "y", 2, binding, xa, xb,
                         opt.step, {1.0, 0.0});
    }
    // the grid end may fall short of xb by a fraction of a step; the bump must
    // vanish at the actual last grid point
    double T = traj.back_x() - xa;
    Bump bump = {
        [=](double x) { double s = std::sin(M_PI * (x - xa) / T); return s * s; },
        [=](double x) { return M_PI / T * std::sin(2 * M_PI * (x - xa) / T); },
        [=](double x) {
            return 2 * M_PI * M_PI / (T * T) * std::cos(2 * M_PI * (x - xa) / T);
        }};
    double ratio = first_variation_ratio(L, binding, traj, bump, opt.eps);
    bool pass = ratio < 1e-3;
    std::cout << "ratio = " << fmt(ratio) << " " << (pass ? "PASS" : "FAIL") << "\n";
    return pass ? 0 : kExitVerification;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lagrangians for odd-order chain equations via self-adjoint "
                 "linearizations: generation, verification, numerics"};
    app.require_subcommand(1);
    Options opt;

    auto add_symbolic_flags = [&](CLI::App* c, bool needs_order) {
        if (needs_order)
            c->add_option("-N,--order", opt.order, "equation order")->required();
        c->add_option("--alphas", opt.alphas_path, "coefficient table (lines aJ = <sexpr>)");
        c->add_option("--format", opt.format, "plain|latex|sexpr");
        c->add_option("--out", opt.out_path, "write output to file");
    };

    auto* gen = app.add_subcommand("generate", "print the chain equation of a given order");
    add_symbolic_flags(gen, true);

    auto* lin = app.add_subcommand("linearize", "print the linear equation");
    add_symbolic_flags(lin, true);
    lin->add_flag("--certify", opt.certify, "also print the substitution certificate");

    auto* sa = app.add_subcommand("selfadjoint", "adjoint analysis of an operator file");
    sa->add_option("--operator", opt.operator_path, "operator file (lines rI = <sexpr>)");
    sa->add_option("--recurrence", opt.recurrence,
                   "n=<k>: odd-coefficient recurrence audit for order 2n");
    sa->add_option("--format", opt.format, "plain|latex|sexpr");
    sa->add_option("--out", opt.out_path, "write output to file");

    auto* lag = app.add_subcommand("lagrangian", "construct and verify the Lagrangian");
    add_symbolic_flags(lag, true);
    lag->add_flag("--reduce-gauge", opt.reduce_gauge,
                  "also print the gauge-reduced linear-equation Lagrangian");

    auto* num = app.add_subcommand("numeric", "numerical checks");
    num->require_subcommand(1);
    auto add_numeric_flags = [&](CLI::App* c) {
        c->add_option("--a0", opt.a0, "constant alpha_0");
        c->add_option("--a1", opt.a1, "constant alpha_1");
        c->add_option("--range", opt.range, "integration range a b")->expected(2);
        c->add_option("--step", opt.step, "grid step h");
        c->add_option("--out", opt.out_path, "CSV output path");
    };
    auto* nric = num->add_subcommand("riccati", "integrate the first-order chain equation");
    add_numeric_flags(nric);
    nric->add_option("--w0", opt.w0, "initial value w(a)");
    auto* nch = num->add_subcommand("colehopf", "linear vs chain consistency");
    add_numeric_flags(nch);
    nch->add_option("--y0", opt.y0, "initial value y(a)");
    nch->add_option("--dy0", opt.dy0, "initial value y'(a)");
    auto* nvar = num->add_subcommand("variation", "action stationarity on the oscillator");
    nvar->add_option("--step", opt.step, "grid step h");
    nvar->add_option("--eps", opt.eps, "perturbation amplitude");
    nvar->add_flag("--perturb", opt.perturb, "use a deliberate non-solution");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        if (gen->parsed()) return cmd_generate(opt);
        if (lin->parsed()) return cmd_linearize(opt);
        if (sa->parsed()) return cmd_selfadjoint(opt);
        if (lag->parsed()) return cmd_lagrangian(opt);
        if (num->parsed()) {
            if (nric->parsed()) return cmd_numeric_riccati(opt);
            if (nch->parsed()) return cmd_numeric_colehopf(opt);
            if (nvar->parsed()) return cmd_numeric_variation(opt);
        }
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.get_name() << "\n";
        return kExitUsage;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitUsage;
}
