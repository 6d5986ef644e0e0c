#ifndef RICLAG_NUMERIC_HPP
#define RICLAG_NUMERIC_HPP

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "riclag/lagrangian.hpp"

namespace riclag {

// Numeric values for coefficient symbols: name -> (x, deriv order) -> value.
// Constants have zero derivatives of every positive order.
class Binding {
public:
    void bind_constant(const std::string& name, double value);
    void bind_function(const std::string& name,
                       std::function<double(double, int)> f);  // f(x, deriv order)
    double eval(const std::string& name, int order, double x) const;
    bool has(const std::string& name) const;

private:
    std::map<std::string, std::function<double(double, int)>> fns_;
};

// Numerical shadow of a dependent variable on a uniform grid. Rows hold the
// variable and its derivatives; row `order` is filled from the ODE right-hand
// side so integrands may reference one derivative above the state.
struct Trajectory {
    std::string var;
    int order = 0;                            // ODE order
    std::vector<double> xs;                   // strictly increasing, uniform
    std::vector<std::vector<double>> values;  // values[i][k] = var^{(k)}(xs[i]), k <= order
    double step = 0.0;
    bool truncated = false;  // blow-up detected; grid ends early

    double back_x() const { return xs.back(); }
};

inline constexpr double kBlowupLimit = 1e12;

// Point evaluation of an expression with the dependent variable's derivatives
// supplied directly (Int nodes are not allowed here).
double eval_point(const Expr& e, double x, const std::string& var,
                  const std::vector<double>& derivs, const Binding& binding);

// Classical 4th-order Runge-Kutta on a uniform grid for
// var^{(m)} = rhs(x, var, ..., var^{(m-1)}). Truncates on blow-up.
Trajectory integrate(const Expr& rhs, const std::string& var, int order,
                     const Binding& binding, double x0, double x1, double h,
                     const std::vector<double>& init);

// Builds a trajectory by sampling closed-form derivative functions
// fs[k](x) = var^{(k)}(x); used for analytic references and non-solutions.
Trajectory sample_trajectory(const std::string& var, int order,
                             const std::vector<std::function<double(double)>>& fs,
                             double x0, double x1, double h);

// Evaluates an expression along a trajectory. Int nodes are cumulative
// trapezoidal antiderivatives with value 0 at the first grid point.
class Evaluator {
public:
    Evaluator(Expr e, const Binding& binding, const Trajectory& traj);
    double at(std::size_t i) const;

private:
    double eval(const Expr& e, std::size_t i) const;
    const std::vector<double>& antideriv_values(const Expr& int_node) const;

    Expr expr_;
    const Binding& binding_;
    const Trajectory& traj_;
    mutable std::map<std::string, std::vector<double>> int_cache_;
};

// Integrates the chain equation matching a linear-equation trajectory and
// returns max |w(x) - y'(x)/y(x)| over the window where |y| stays above
// `floor` (from the left end). Throws std::runtime_error if the window is empty.
double cole_hopf_consistency(const Trajectory& y_traj, const std::vector<Expr>& alphas,
                             const Binding& binding, double floor = 1e-8);

// Composite trapezoidal quadrature of L along the trajectory.
double action(const Lagrangian& L, const Binding& binding, const Trajectory& traj);

// A compactly supported perturbation: value and derivatives up to the
// trajectory order, as closed-form callables.
using Bump = std::vector<std::function<double(double)>>;

// Central first-difference ratio |S(traj + eps b) - S(traj - eps b)| / (2 eps).
// Vanishes as O(eps^2) + O(h^2) on a true solution. Throws if the bump (or a
// derivative below the Lagrangian order) fails to vanish at the endpoints.
double first_variation_ratio(const Lagrangian& L, const Binding& binding,
                             const Trajectory& traj, const Bump& bump, double eps);

}  // namespace riclag

#endif
