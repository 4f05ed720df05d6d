#include "pscl/solutions.hpp"

#include <cmath>
#include <map>
#include <vector>

namespace pscl {

namespace {

// Polynomials in s = sech(theta), T = tanh(theta), closed under d/dtheta:
//   (s^m T^n)' = -m s^m T^{n+1} + n s^{m+2} T^{n-1}.
using STPoly = std::map<std::pair<int, int>, double>;

STPoly st_derivative(const STPoly& p) {
    STPoly d;
    for (auto& [mn, c] : p) {
        auto [m, n] = mn;
        if (m != 0) d[{m, n + 1}] += -m * c;
        if (n != 0) d[{m + 2, n - 1}] += n * c;
    }
    return d;
}

// sech^(k)(theta) as an STPoly, cached.
const STPoly& sech_derivative(int k) {
    static std::vector<STPoly> cache{{{{1, 0}, 1.0}}};
    while (static_cast<int>(cache.size()) <= k)
        cache.push_back(st_derivative(cache.back()));
    return cache[static_cast<size_t>(k)];
}

double st_eval(const STPoly& p, double theta) {
    double s = 1.0 / std::cosh(theta), T = std::tanh(theta);
    double acc = 0.0;
    for (auto& [mn, c] : p) acc += c * std::pow(s, mn.first) * std::pow(T, mn.second);
    return acc;
}

}  // namespace

ExactSolution ExactSolution::mkdv_soliton(double a) { return ExactSolution("mkdv-soliton", a); }
ExactSolution ExactSolution::sg_kink(double a) { return ExactSolution("sg-kink", a); }

ExactSolution ExactSolution::by_name(const std::string& name, double a) {
    if (name == "mkdv-soliton") return mkdv_soliton(a);
    if (name == "sg-kink") return sg_kink(a);
    throw DomainError("unknown exact solution: " + name);
}

double ExactSolution::theta(double x, double t) const {
    if (family_ == "mkdv-soliton") return a_ * x - a_ * a_ * a_ * t;
    return a_ * x + t / a_;
}

// q = a sech(theta) for both families; d/dx = a d/dtheta.
double ExactSolution::q_jet(int k, double x, double t) const {
    return a_ * std::pow(a_, k) * st_eval(sech_derivative(k), theta(x, t));
}

double ExactSolution::q_t(double x, double t) const {
    double dtheta_dt = family_ == "mkdv-soliton" ? -a_ * a_ * a_ : 1.0 / a_;
    return a_ * dtheta_dt * st_eval(sech_derivative(1), theta(x, t));
}

double ExactSolution::u(double x, double t) const {
    if (!has_potential()) throw DomainError("solution has no potential u");
    return 4.0 * std::atan(std::exp(theta(x, t)));
}

double ExactSolution::u_t(double x, double t) const {
    if (!has_potential()) throw DomainError("solution has no potential u");
    // u_theta = 2 sech(theta), theta_t = 1/a
    return 2.0 / (a_ * std::cosh(theta(x, t)));
}

}  // namespace pscl
