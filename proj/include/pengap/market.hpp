#ifndef PENGAP_MARKET_HPP
#define PENGAP_MARKET_HPP

#include "pengap/errors.hpp"

namespace pengap {

/// Intertemporal discount rate of the quadratic-loss objective.
struct PreferenceParams {
    double rho;

    explicit PreferenceParams(double rho_) : rho(rho_) {
        if (!(rho > 0.0)) throw InvalidConfig("rho must be > 0");
    }
};

/// Riskless/risky market with the derived constants used by the control
/// coefficients: Sharpe ratio lambda, a = rho + lambda^2 - 2r, a~ = a + r.
/// All derived fields are computed at construction and never mutated.
struct MarketModel {
    double r;
    double mu;
    double sigma;
    double rho;
    double lambda;
    double a;
    double a_tilde;

    MarketModel(double r_, double mu_, double sigma_, PreferenceParams prefs)
        : r(r_), mu(mu_), sigma(sigma_), rho(prefs.rho) {
        if (!(sigma > 0.0)) throw InvalidConfig("sigma must be > 0");
        lambda = (mu - r) / sigma;
        a = rho + lambda * lambda - 2.0 * r;
        a_tilde = a + r;
    }
};

} // namespace pengap

#endif
