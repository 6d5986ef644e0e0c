#include "riclag/numeric.hpp"

#include <cmath>
#include <stdexcept>

namespace riclag {

void Binding::bind_constant(const std::string& name, double value) {
    fns_[name] = [value](double, int order) { return order == 0 ? value : 0.0; };
}

void Binding::bind_function(const std::string& name,
                            std::function<double(double, int)> f) {
    fns_[name] = std::move(f);
}

bool Binding::has(const std::string& name) const { return fns_.count(name) != 0; }

double Binding::eval(const std::string& name, int order, double x) const {
    auto it = fns_.find(name);
    if (it == fns_.end())
        throw std::runtime_error("unbound symbol '" + name + "' in numeric evaluation");
    return it->second(x, order);
}

namespace {

double to_double(const Rational& v) { return v.convert_to<double>(); }

}  // namespace

double eval_point(const Expr& e, double x, const std::string& var,
                  const std::vector<double>& derivs, const Binding& binding) {
    switch (e.kind()) {
        case Kind::Number:
            return to_double(e.value());
        case Kind::Indep:
            return x;
        case Kind::ConstSym:
            return binding.eval(e.name(), 0, x);
        case Kind::Symbol:
            if (e.name() == var) {
                if (e.deriv_order() >= static_cast<int>(derivs.size()))
                    throw std::runtime_error("derivative order " +
                                             std::to_string(e.deriv_order()) +
                                             " of '" + var + "' not available");
                return derivs[e.deriv_order()];
            }
            return binding.eval(e.name(), e.deriv_order(), x);
        case Kind::Sum: {
            double s = 0;
            for (auto& a : e.args()) s += eval_point(a, x, var, derivs, binding);
            return s;
        }
        case Kind::Product: {
            double p = 1;
            for (auto& a : e.args()) p *= eval_point(a, x, var, derivs, binding);
            return p;
        }
        case Kind::Power:
            return std::pow(eval_point(e.args()[0], x, var, derivs, binding),
                            static_cast<double>(e.exponent()));
        case Kind::ExpFn:
            return std::exp(eval_point(e.args()[0], x, var, derivs, binding));
        case Kind::AntiDeriv:
            throw std::runtime_error("Int node in pointwise evaluation");
    }
    throw std::logic_error("unreachable");
}

Trajectory integrate(const Expr& rhs, const std::string& var, int order,
                     const Binding& binding, double x0, double x1, double h,
                     const std::vector<double>& init) {
    if (order < 1) throw std::invalid_argument("equation order must be positive");
    if (init.size() != static_cast<std::size_t>(order))
        throw std::invalid_argument("initial data length must equal the equation order");
    if (h <= 0 || x1 <= x0) throw std::invalid_argument("bad integration range/step");
    Expr f = normalize(rhs);

    auto deriv = [&](double x, const std::vector<double>& u) {
        std::vector<double> du(order);
        for (int j = 0; j + 1 < order; ++j) du[j] = u[j + 1];
        du[order - 1] = eval_point(f, x, var, u, binding);
        return du;
    };

    Trajectory traj;
    traj.var = var;
    traj.order = order;
    traj.step = h;

    std::size_t steps = static_cast<std::size_t>(std::llround((x1 - x0) / h));
    std::vector<double> u = init;

    auto record = [&](double x, const std::vector<double>& state) {
        std::vector<double> row = state;
        row.push_back(eval_point(f, x, var, state, binding));
        traj.xs.push_back(x);
        traj.values.push_back(std::move(row));
    };
    record(x0, u);

    for (std::size_t s = 0; s < steps; ++s) {
        double x = x0 + static_cast<double>(s) * h;
        std::vector<double> k1 = deriv(x, u);
        std::vector<double> v(order);
        for (int j = 0; j < order; ++j) v[j] = u[j] + 0.5 * h * k1[j];
        std::vector<double> k2 = deriv(x + 0.5 * h, v);
        for (int j = 0; j < order; ++j) v[j] = u[j] + 0.5 * h * k2[j];
        std::vector<double> k3 = deriv(x + 0.5 * h, v);
        for (int j = 0; j < order; ++j) v[j] = u[j] + h * k3[j];
        std::vector<double> k4 = deriv(x + h, v);
        for (int j = 0; j < order; ++j)
            u[j] += h / 6.0 * (k1[j] + 2 * k2[j] + 2 * k3[j] + k4[j]);

        bool blown = false;
        for (double uj : u)
            if (!std::isfinite(uj) || std::abs(uj) > kBlowupLimit) blown = true;
        if (blown) {
            traj.truncated = true;
            break;
        }
        record(x0 + static_cast<double>(s + 1) * h, u);
    }
    return traj;
}

Trajectory sample_trajectory(const std::string& var, int order,
                             const std::vector<std::function<double(double)>>& fs,
                             double x0, double x1, double h) {
    if (fs.size() != static_cast<std::size_t>(order) + 1)
        throw std::invalid_argument("need derivative functions 0..order");
    Trajectory traj;
    traj.var = var;
    traj.order = order;
    traj.step = h;
    std::size_t steps = static_cast<std::size_t>(std::llround((x1 - x0) / h));
    for (std::size_t i = 0; i <= steps; ++i) {
        double x = x0 + static_cast<double>(i) * h;
        std::vector<double> row;
        for (auto& fk : fs) row.push_back(fk(x));
        traj.xs.push_back(x);
        traj.values.push_back(std::move(row));
    }
    return traj;
}

Evaluator::Evaluator(Expr e, const Binding& binding, const Trajectory& traj)
    : expr_(normalize(std::move(e))), binding_(binding), traj_(traj) {}

const std::vector<double>& Evaluator::antideriv_values(const Expr& int_node) const {
    std::string key = render(int_node, RenderFormat::Sexpr);
    auto it = int_cache_.find(key);
    if (it != int_cache_.end()) return it->second;
    const Expr& arg = int_node.args()[0];
    std::vector<double> cum(traj_.xs.size(), 0.0);
    double prev = eval(arg, 0);
    for (std::size_t i = 1; i < traj_.xs.size(); ++i) {
        double cur = eval(arg, i);
        cum[i] = cum[i - 1] + 0.5 * (prev + cur) * (traj_.xs[i] - traj_.xs[i - 1]);
        prev = cur;
    }
    return int_cache_.emplace(std::move(key), std::move(cum)).first->second;
}

double Evaluator::eval(const Expr& e, std::size_t i) const {
    switch (e.kind()) {
        case Kind::Number:
            return to_double(e.value());
        case Kind::Indep:
            return traj_.xs[i];
        case Kind::ConstSym:
            return binding_.eval(e.name(), 0, traj_.xs[i]);
        case Kind::Symbol:
            if (e.name() == traj_.var) {
                if (e.deriv_order() >= static_cast<int>(traj_.values[i].size()))
                    throw std::runtime_error("derivative order " +
                                             std::to_string(e.deriv_order()) +
                                             " of '" + traj_.var +
                                             "' not stored in trajectory");
                return traj_.values[i][e.deriv_order()];
            }
            return binding_.eval(e.name(), e.deriv_order(), traj_.xs[i]);
        case Kind::Sum: {
            double s = 0;
            for (auto& a : e.args()) s += eval(a, i);
            return s;
        }
        case Kind::Product: {
            double p = 1;
            for (auto& a : e.args()) p *= eval(a, i);
            return p;
        }
        case Kind::Power:
            return std::pow(eval(e.args()[0], i), static_cast<double>(e.exponent()));
        case Kind::ExpFn:
            return std::exp(eval(e.args()[0], i));
        case Kind::AntiDeriv:
            return antideriv_values(e)[i];
    }
    throw std::logic_error("unreachable");
}

double Evaluator::at(std::size_t i) const { return eval(expr_, i); }

double cole_hopf_consistency(const Trajectory& y_traj, const std::vector<Expr>& alphas,
                             const Binding& binding, double floor) {
    int N = y_traj.order - 1;
    if (N < 1) throw std::invalid_argument("linear trajectory must have order >= 2");

    // restrict to the leading window where y stays away from zero
    std::size_t end = 0;
    while (end < y_traj.xs.size() && std::abs(y_traj.values[end][0]) > floor) ++end;
    if (end < 2) throw std::runtime_error("y vanishes at the start of the grid");

    // initial chain data from the g_k identities: w^{(k-1)} = y^{(k)}/y - (g_k - w^{(k-1)})
    const std::vector<double>& y0 = y_traj.values[0];
    double x0 = y_traj.xs[0];
    std::vector<double> w_init;
    for (int k = 1; k <= N; ++k) {
        Expr tail = normalize(cole_hopf_y_derivative(k) - Expr::sym("w", k - 1));
        double wv = y0[k] / y0[0] - eval_point(tail, x0, "w", w_init, binding);
        w_init.push_back(wv);
    }

    RiccatiChainEq eq = build_chain_equation(N, alphas);
    Expr rhs = normalize(Expr::sym("w", N) - eq.lhs);
    double x1 = y_traj.xs[end - 1];
    Trajectory w_traj = integrate(rhs, "w", N, binding, x0, x1, y_traj.step, w_init);

    double dev = 0;
    for (std::size_t i = 0; i < w_traj.xs.size() && i < end; ++i) {
        double ratio = y_traj.values[i][1] / y_traj.values[i][0];
        dev = std::max(dev, std::abs(w_traj.values[i][0] - ratio));
    }
    return dev;
}

double action(const Lagrangian& L, const Binding& binding, const Trajectory& traj) {
    Evaluator ev(L.expr, binding, traj);
    double s = 0;
    double prev = ev.at(0);
    for (std::size_t i = 1; i < traj.xs.size(); ++i) {
        double cur = ev.at(i);
        s += 0.5 * (prev + cur) * (traj.xs[i] - traj.xs[i - 1]);
        prev = cur;
    }
    return s;
}

double first_variation_ratio(const Lagrangian& L, const Binding& binding,
                             const Trajectory& traj, const Bump& bump, double eps) {
    if (bump.size() < static_cast<std::size_t>(traj.order) + 1)
        throw std::invalid_argument("bump must supply derivatives 0..trajectory order");
    double xa = traj.xs.front(), xb = traj.xs.back();
    for (int j = 0; j < L.order; ++j)
        if (std::abs(bump[j](xa)) > 1e-9 || std::abs(bump[j](xb)) > 1e-9)
            throw std::invalid_argument("bump support reaches an endpoint");

    auto perturb = [&](double sign) {
        Trajectory t = traj;
        for (std::size_t i = 0; i < t.xs.size(); ++i)
            for (std::size_t k = 0; k < t.values[i].size() && k < bump.size(); ++k)
                t.values[i][k] += sign * eps * bump[k](t.xs[i]);
        return t;
    };
    double sp = action(L, binding, perturb(+1.0));
    double sm = action(L, binding, perturb(-1.0));
    return std::abs(sp - sm) / (2.0 * eps);
}

}  // namespace riclag
