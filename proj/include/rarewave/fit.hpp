#pragma once

// Decay-rate fitting in log space, shared by every verification suite.

#include <cmath>
#include <string>
#include <vector>

#include "rarewave/core.hpp"

namespace rarewave {

enum class DecayModel {
    PowerLaw,     // value ~ (1+t)^beta        (fitted_param = beta)
    Exponential,  // value ~ exp(-r t)         (fitted_param = -r, i.e. slope)
};

struct DecaySeries {
    std::vector<double> t;
    std::vector<double> value;
    DecayModel model = DecayModel::PowerLaw;
    double fitted_param = 0.0;
    double residual = 0.0;  // RMS of log-space misfit
    bool degenerate = false;
    std::string note;
};

// Least squares of log(value) against x(t), where x = log(1+t) for the power
// model and x = t for the exponential one. Requires >= 8 positive samples.
inline DecaySeries fit_rate(std::vector<double> t, std::vector<double> value, DecayModel model) {
    if (t.size() != value.size() || t.size() < 8)
        throw FitError("fit_rate: need at least 8 samples");
    for (std::size_t i = 1; i < t.size(); ++i)
        if (!(t[i] > t[i - 1])) throw FitError("fit_rate: times must be strictly increasing");
    for (double v : value)
        if (!(v > 0.0)) throw FitError("fit_rate: values must be positive");

    const std::size_t n = t.size();
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = (model == DecayModel::PowerLaw) ? std::log1p(t[i]) : t[i];
        y[i] = std::log(value[i]);
    }
    double xm = 0, ym = 0;
    for (std::size_t i = 0; i < n; ++i) {
        xm += x[i];
        ym += y[i];
    }
    xm /= n;
    ym /= n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - xm) * (x[i] - xm);
        sxy += (x[i] - xm) * (y[i] - ym);
    }
    if (sxx == 0.0) throw FitError("fit_rate: degenerate abscissa");
    const double slope = sxy / sxx;
    const double icept = ym - slope * xm;
    double ss = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - (icept + slope * x[i]);
        ss += r * r;
    }
    DecaySeries out;
    out.t = std::move(t);
    out.value = std::move(value);
    out.model = model;
    out.fitted_param = slope;
    out.residual = std::sqrt(ss / n);
    return out;
}

}  // namespace rarewave
