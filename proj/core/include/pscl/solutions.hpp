#pragma once

#include <string>

#include "pscl/poly.hpp"

namespace pscl {

/// Closed-form reference solutions with analytic x-jets:
///   mkdv-soliton:  q(x,t) = a sech(a x - a^3 t)        (q_t + 6q^2 q_x + q_xxx = 0)
///   sg-kink:       u(x,t) = 4 atan(exp(a x + t/a)),    q = u_x / 2 = a sech(a x + t/a)
///                                                       (u_xt = sin u)
class ExactSolution {
public:
    static ExactSolution mkdv_soliton(double a);
    static ExactSolution sg_kink(double a);
    static ExactSolution by_name(const std::string& name, double a);

    const std::string& family() const { return family_; }
    double amplitude() const { return a_; }
    bool has_potential() const { return family_ == "sg-kink"; }

    /// k-th x-derivative of q at (x, t); k up to 8.
    double q_jet(int k, double x, double t) const;
    double q_t(double x, double t) const;
    double u(double x, double t) const;  // sg-kink only
    double u_t(double x, double t) const;

private:
    ExactSolution(std::string family, double a) : family_(std::move(family)), a_(a) {}
    double theta(double x, double t) const;
    std::string family_;
    double a_;
};

}  // namespace pscl
