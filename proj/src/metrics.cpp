#include "stse/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "stse/error.hpp"

namespace stse {

ReturnSeries::ReturnSeries(std::vector<double> values, double periodicity, std::string label,
                           std::vector<Timestamp> timestamps)
    : values_(std::move(values)), periodicity_(periodicity), label_(std::move(label)),
      timestamps_(std::move(timestamps)) {
    if (values_.empty()) throw Error(ErrorCode::InvalidSeries, "return series is empty");
    if (!(periodicity_ > 0.0) || !std::isfinite(periodicity_))
        throw Error(ErrorCode::InvalidSeries, "periodicity must be positive");
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i]) || !(values_[i] > -1.0))
            throw Error(ErrorCode::InvalidSeries, "return must be finite and > -1", i);
    }
    if (!timestamps_.empty()) {
        if (timestamps_.size() != values_.size())
            throw Error(ErrorCode::InvalidSeries, "timestamp count differs from return count");
        for (std::size_t i = 1; i < timestamps_.size(); ++i) {
            if (!(timestamps_[i - 1] < timestamps_[i]))
                throw Error(ErrorCode::InvalidSeries, "timestamps not strictly increasing", i);
        }
    }
}

double ReturnSeries::cumulative_return() const {
    double growth = 1.0;
    for (double r : values_) growth *= 1.0 + r;
    return growth - 1.0;
}

EquityCurve::EquityCurve(std::vector<EquityPoint> points) : points_(std::move(points)) {
    for (std::size_t i = 1; i < points_.size(); ++i) {
        if (!(points_[i - 1].time < points_[i].time))
            throw Error(ErrorCode::InvalidSeries, "equity timestamps not strictly increasing", i);
    }
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (!std::isfinite(points_[i].equity))
            throw Error(ErrorCode::InvalidSeries, "equity value is not finite", i);
    }
}

ReturnSeries equity_to_returns(const EquityCurve& curve, double periodicity, ReturnMode mode,
                               std::string label) {
    const auto pts = curve.points();
    if (pts.size() < 2)
        throw Error(ErrorCode::TooFewPoints, "an equity curve needs at least 2 points");

    std::vector<double> returns;
    std::vector<Timestamp> stamps;
    returns.reserve(pts.size() - 1);
    stamps.reserve(pts.size() - 1);

    if (mode == ReturnMode::Simple) {
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (!(pts[i].equity > 0.0))
                throw Error(ErrorCode::NonPositiveEquity,
                            "equity must be positive for simple returns", i);
        }
        for (std::size_t i = 1; i < pts.size(); ++i) {
            returns.push_back(pts[i].equity / pts[i - 1].equity - 1.0);
            stamps.push_back(pts[i].time);
        }
    } else {
        const double deposit = pts[0].equity;
        if (!(deposit > 0.0))
            throw Error(ErrorCode::NonPositiveEquity, "initial equity must be positive", 0);
        for (std::size_t i = 1; i < pts.size(); ++i) {
            returns.push_back((pts[i].equity - pts[i - 1].equity) / deposit);
            stamps.push_back(pts[i].time);
        }
    }
    return ReturnSeries(std::move(returns), periodicity, std::move(label), std::move(stamps));
}

MomentSummary moments(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n < 2) throw Error(ErrorCode::TooFewObservations, "moments need at least 2 observations");

    // Exact equality check: a constant series must not leak rounding noise
    // into the standardized moments.
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    if (*lo == *hi) throw Error(ErrorCode::ZeroVariance, "all returns are equal");

    const double count = static_cast<double>(n);
    double sum = 0.0;
    for (double v : values) sum += v;
    const double mean = sum / count;

    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double v : values) {
        const double d = v - mean;
        const double d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    const double ss = m2;
    m2 /= count;
    m3 /= count;
    m4 /= count;
    if (!(m2 > 0.0)) throw Error(ErrorCode::ZeroVariance, "variance underflows to zero");

    MomentSummary out;
    out.n = n;
    out.mean = mean;
    out.stdev = std::sqrt(ss / (count - 1.0));
    out.skewness = m3 / (m2 * std::sqrt(m2));
    out.kurtosis = m4 / (m2 * m2);
    return out;
}

SharpeEstimate sharpe(const MomentSummary& m, double periodicity, double risk_free_per_period) {
    if (!(m.stdev > 0.0)) throw Error(ErrorCode::ZeroVariance, "standard deviation is zero");
    SharpeEstimate est;
    est.risk_free_per_period = risk_free_per_period;
    est.per_period = (m.mean - risk_free_per_period) / m.stdev;
    est.annualized = est.per_period * std::sqrt(periodicity);
    return est;
}

SharpeEstimate sharpe(const ReturnSeries& series, double risk_free_per_period) {
    return sharpe(moments(series), series.periodicity(), risk_free_per_period);
}

} // namespace stse
