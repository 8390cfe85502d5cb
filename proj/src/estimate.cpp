#include "lplab/estimate.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace lplab {

RatioCurve ratio_curve(const FieldOp& op, const std::string& op_id, const Family& family,
                       std::span<const double> p_grid, RatioType type) {
    if (family.members.empty()) throw std::invalid_argument("ratio_curve: empty family");
    RatioCurve curve;
    curve.operator_id = op_id;
    curve.family_id = family.id;
    curve.type = type;
    curve.p.assign(p_grid.begin(), p_grid.end());
    curve.value.assign(p_grid.size(), 0.0);
    curve.argmax.assign(p_grid.size(), "");
    curve.quad_err.assign(p_grid.size(), 0.0);

    for (std::size_t m = 0; m < family.members.size(); ++m) {
        const auto& f = family.members[m];
        auto g = op(f);
        for (std::size_t i = 0; i < curve.p.size(); ++i) {
            double num = lp_norm(g, curve.p[i]);
            double den = lp_norm(f, curve.p[i]);
            double r = type == RatioType::c_type ? num / den : den / num;
            if (r > curve.value[i]) {
                curve.value[i] = r;
                curve.argmax[i] = family.member_ids[m];
            }
        }
    }
    return curve;
}

ExponentFit fit_loglog(std::span<const double> p, std::span<const double> value,
                       FitRegime regime) {
    if (p.size() != value.size() || p.size() < 4)
        throw std::invalid_argument("fit_loglog: need at least 4 matched points");
    ExponentFit fit;
    fit.regime = regime;
    fit.points = static_cast<int>(p.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::vector<double> xs(p.size()), ys(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        double regressor =
            regime == FitRegime::p_to_infinity ? p[i] : p[i] / (p[i] - 1.0);
        xs[i] = std::log(regressor);
        ys[i] = std::log(value[i]);
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    double n = static_cast<double>(p.size());
    double denom = n * sxx - sx * sx;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    for (std::size_t i = 0; i < p.size(); ++i) {
        double r = ys[i] - (fit.slope * xs[i] + fit.intercept);
        fit.residual += r * r;
    }
    return fit;
}

ExponentFit fit_exponent(const RatioCurve& curve, FitRegime regime, double p_lo, double p_hi) {
    std::vector<double> p, v;
    for (std::size_t i = 0; i < curve.p.size(); ++i) {
        if (curve.p[i] >= p_lo && curve.p[i] <= p_hi) {
            p.push_back(curve.p[i]);
            v.push_back(curve.value[i]);
        }
    }
    return fit_loglog(p, v, regime);
}

std::string verdicts_to_json_string(std::span<const Verdict> verdicts) {
    nlohmann::json j;
    j["schema"] = "lplab-verdicts-1";
    auto arr = nlohmann::json::array();
    for (const auto& v : verdicts) {
        arr.push_back({{"experiment", v.experiment},
                       {"claim", v.claim},
                       {"value", v.value},
                       {"window", {v.lo, v.hi}},
                       {"pass", v.pass},
                       {"detail", v.detail}});
    }
    j["verdicts"] = arr;
    return j.dump(2) + "\n";
}

std::string curve_to_csv(const RatioCurve& curve) {
    std::string out = "experiment,family,type,p,value,err,argmax\n";
    char buf[160];
    for (std::size_t i = 0; i < curve.p.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%s,%s,%s,%.17g,%.17g,%.17g,%s\n",
                      curve.operator_id.c_str(), curve.family_id.c_str(),
                      curve.type == RatioType::c_type ? "c" : "t", curve.p[i], curve.value[i],
                      curve.quad_err[i], curve.argmax[i].c_str());
        out += buf;
    }
    return out;
}

std::string fit_to_json_string(const ExponentFit& fit) {
    nlohmann::json j;
    j["regime"] = fit.regime == FitRegime::p_to_infinity ? "p->inf" : "p->1";
    j["slope"] = fit.slope;
    j["intercept"] = fit.intercept;
    j["residual"] = fit.residual;
    j["points"] = fit.points;
    return j.dump(2) + "\n";
}

}  // namespace lplab
