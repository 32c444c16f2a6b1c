#include "qreset/schedules.hpp"

#include <cmath>
#include <sstream>

#include "qreset/errors.hpp"

namespace qreset {

ResetSchedule ResetSchedule::poisson(double r) {
    if (!(r >= 0.0 && r <= 1.0)) throw InvalidRate("poisson rate must lie in [0,1]");
    ResetSchedule s;
    s.kind_ = Kind::poisson;
    s.rate_ = r;
    return s;
}

ResetSchedule ResetSchedule::deterministic(std::size_t ell) {
    if (ell == 0) throw ConfigError("deterministic schedule needs l >= 1");
    ResetSchedule s;
    s.kind_ = Kind::deterministic;
    s.ell_ = ell;
    return s;
}

ResetSchedule ResetSchedule::power_law(double gamma, double alpha) {
    if (!(gamma >= 0.0 && gamma <= 1.0)) throw ConfigError("power-law gamma must lie in [0,1]");
    if (!(alpha > 0.0)) throw ConfigError("power-law alpha must be positive");
    ResetSchedule s;
    s.kind_ = Kind::power_law;
    s.gamma_ = gamma;
    s.alpha_ = alpha;
    return s;
}

ResetSchedule ResetSchedule::explicit_seq(std::vector<double> probs) {
    for (double p : probs)
        if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("explicit probabilities must lie in [0,1]");
    ResetSchedule s;
    s.kind_ = Kind::explicit_seq;
    s.explicit_ = std::move(probs);
    return s;
}

double ResetSchedule::prob_at(std::size_t n) const {
    switch (kind_) {
        case Kind::poisson:
            return rate_;
        case Kind::deterministic:
            return n == ell_ ? 1.0 : 0.0;
        case Kind::power_law:
            return gamma_ / std::pow(static_cast<double>(n) + 1.0, alpha_);
        case Kind::explicit_seq:
            if (n >= explicit_.size())
                throw OutOfRange("explicit schedule queried beyond its length");
            return explicit_[n];
    }
    throw Error("unreachable schedule kind");
}

std::string ResetSchedule::to_string() const {
    std::ostringstream os;
    os.precision(17);
    switch (kind_) {
        case Kind::poisson:
            os << "poisson:r=" << rate_;
            break;
        case Kind::deterministic:
            os << "deterministic:l=" << ell_;
            break;
        case Kind::power_law:
            os << "powerlaw:gamma=" << gamma_ << ",alpha=" << alpha_;
            break;
        case Kind::explicit_seq: {
            os << "explicit:[";
            for (std::size_t i = 0; i < explicit_.size(); ++i) {
                if (i) os << ",";
                os << explicit_[i];
            }
            os << "]";
            break;
        }
    }
    return os.str();
}

namespace {

double parse_double(const std::string& text) {
    std::size_t used = 0;
    double v;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        throw ConfigError("cannot parse number: '" + text + "'");
    }
    if (used != text.size()) throw ConfigError("trailing junk in number: '" + text + "'");
    return v;
}

// key=value pairs separated by commas
std::vector<std::pair<std::string, std::string>> parse_kv(const std::string& text) {
    std::vector<std::pair<std::string, std::string>> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw ConfigError("expected key=value in schedule parameters: '" + item + "'");
        out.emplace_back(item.substr(0, eq), item.substr(eq + 1));
    }
    return out;
}

} // namespace

ResetSchedule ResetSchedule::parse(const std::string& text) {
    const auto colon = text.find(':');
    const std::string kind = text.substr(0, colon);
    const std::string rest = colon == std::string::npos ? std::string() : text.substr(colon + 1);

    if (kind == "poisson") {
        for (const auto& [k, v] : parse_kv(rest))
            if (k == "r") return poisson(parse_double(v));
        throw ConfigError("poisson schedule needs r=<rate>");
    }
    if (kind == "deterministic") {
        for (const auto& [k, v] : parse_kv(rest))
            if (k == "l" || k == "ell") {
                const double ell = parse_double(v);
                if (ell < 1.0 || ell != std::floor(ell))
                    throw ConfigError("deterministic l must be a positive integer");
                return deterministic(static_cast<std::size_t>(ell));
            }
        throw ConfigError("deterministic schedule needs l=<steps>");
    }
    if (kind == "powerlaw") {
        double gamma = -1.0, alpha = -1.0;
        for (const auto& [k, v] : parse_kv(rest)) {
            if (k == "gamma") gamma = parse_double(v);
            else if (k == "alpha") alpha = parse_double(v);
            else throw ConfigError("unknown powerlaw parameter: " + k);
        }
        if (gamma < 0.0 || alpha < 0.0)
            throw ConfigError("powerlaw schedule needs gamma=<g>,alpha=<a>");
        return power_law(gamma, alpha);
    }
    if (kind == "explicit") {
        if (rest.size() < 2 || rest.front() != '[' || rest.back() != ']')
            throw ConfigError("explicit schedule needs a [..] probability list");
        std::vector<double> probs;
        std::stringstream ss(rest.substr(1, rest.size() - 2));
        std::string item;
        while (std::getline(ss, item, ','))
            probs.push_back(parse_double(item));
        return explicit_seq(std::move(probs));
    }
    throw ConfigError("unknown schedule kind: '" + kind + "'");
}

double no_reset_prob(const ResetSchedule& s, std::size_t t) {
    // compensated log-space accumulation; t can reach 1e6
    double sum = 0.0, comp = 0.0;
    for (std::size_t j = 0; j < t; ++j) {
        const double r = s.prob_at(j);
        if (r >= 1.0) return 0.0;
        const double term = std::log1p(-r);
        const double y = term - comp;
        const double next = sum + y;
        comp = (next - sum) - y;
        sum = next;
    }
    return std::exp(sum);
}

double no_reset_asymptote(const ResetSchedule& s, std::size_t t) {
    if (s.kind() != ResetSchedule::Kind::power_law)
        throw ConfigError("no_reset_asymptote is defined for power-law schedules");
    if (t == 0) return 1.0;
    const double gamma = s.gamma();
    const double alpha = s.alpha();
    const double td = static_cast<double>(t);
    if (alpha > 1.0) return std::exp(-gamma * riemann_zeta(alpha));
    if (alpha == 1.0) return std::exp(-gamma * euler_gamma) * std::pow(td, -gamma);
    return std::exp(-gamma * std::pow(td, 1.0 - alpha) / (1.0 - alpha));
}

double riemann_zeta(double s) {
    if (!(s > 1.0)) throw Error("riemann_zeta requires s > 1");
    constexpr int cutoff = 32;
    double sum = 0.0;
    for (int n = 1; n < cutoff; ++n) sum += std::pow(n, -s);
    const double nd = static_cast<double>(cutoff);
    // Euler-Maclaurin tail with Bernoulli terms B2..B8
    double tail = std::pow(nd, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(nd, -s);
    const double p1 = s;
    const double p3 = s * (s + 1.0) * (s + 2.0);
    const double p5 = p3 * (s + 3.0) * (s + 4.0);
    const double p7 = p5 * (s + 5.0) * (s + 6.0);
    tail += p1 * std::pow(nd, -s - 1.0) / 12.0;
    tail -= p3 * std::pow(nd, -s - 3.0) / 720.0;
    tail += p5 * std::pow(nd, -s - 5.0) / 30240.0;
    tail -= p7 * std::pow(nd, -s - 7.0) / 1209600.0;
    return sum + tail;
}

} // namespace qreset
