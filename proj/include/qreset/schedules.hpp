#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace qreset {

/// Euler-Mascheroni constant.
inline constexpr double euler_gamma = 0.57721566490153286061;

/// Reset-probability sequence r_n, n = number of unitary updates since the
/// last reset.
class ResetSchedule {
public:
    enum class Kind { poisson, deterministic, power_law, explicit_seq };

    static ResetSchedule poisson(double r);
    static ResetSchedule deterministic(std::size_t ell);
    static ResetSchedule power_law(double gamma, double alpha);
    static ResetSchedule explicit_seq(std::vector<double> probs);

    /// "poisson:r=0.3" | "powerlaw:gamma=0.2,alpha=2" | "deterministic:l=5"
    /// | "explicit:[0.1,0.2,0.3]"
    static ResetSchedule parse(const std::string& text);

    Kind kind() const { return kind_; }
    double rate() const { return rate_; }
    double gamma() const { return gamma_; }
    double alpha() const { return alpha_; }
    std::size_t ell() const { return ell_; }

    double prob_at(std::size_t n) const;
    std::string to_string() const;

private:
    ResetSchedule() = default;
    Kind kind_ = Kind::poisson;
    double rate_ = 0.0;
    double gamma_ = 0.0;
    double alpha_ = 1.0;
    std::size_t ell_ = 1;
    std::vector<double> explicit_;
};

/// P_t(t) = prod_{j<t} (1 - r_j), accumulated in log space; exactly 0 when
/// some r_j = 1.
double no_reset_prob(const ResetSchedule& s, std::size_t t);

/// Closed-form large-t behavior of P_t(t) for power-law schedules:
/// exp(-gamma zeta(alpha)) for alpha > 1, exp(-gamma gamma_E) t^-gamma for
/// alpha = 1, exp(-gamma t^(1-alpha)/(1-alpha)) for alpha < 1.
double no_reset_asymptote(const ResetSchedule& s, std::size_t t);

/// zeta(s) for s > 1, direct sum plus Euler-Maclaurin tail.
double riemann_zeta(double s);

} // namespace qreset
