// Ratio curves over test families, growth-exponent regression, and the
// serialization of experiment verdicts.
#pragma once

#include "lplab/field.hpp"

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace lplab {

enum class RatioType { c_type, t_type };

struct Family {
    std::string id;
    std::vector<std::string> member_ids;
    std::vector<SampledField> members;

    void add(std::string member_id, SampledField f) {
        member_ids.push_back(std::move(member_id));
        members.push_back(std::move(f));
    }
};

struct RatioCurve {
    std::string operator_id;
    std::string family_id;
    RatioType type = RatioType::c_type;
    std::vector<double> p;
    std::vector<double> value;        // per-p max ratio over the family
    std::vector<std::string> argmax;  // member attaining it
    std::vector<double> quad_err;     // per-p quadrature error tag (0 = untagged)
};

using FieldOp = std::function<SampledField(const SampledField&)>;

// c-type: ||Op f||_p / ||f||_p;  t-type: ||f||_p / ||Op f||_p.
RatioCurve ratio_curve(const FieldOp& op, const std::string& op_id, const Family& family,
                       std::span<const double> p_grid, RatioType type);

enum class FitRegime { p_to_infinity, p_to_one };

struct ExponentFit {
    FitRegime regime = FitRegime::p_to_infinity;
    double slope = 0;
    double intercept = 0;
    double residual = 0;  // sum of squared log-residuals
    int points = 0;
};

// OLS of log(value) against log p (p -> infinity) or log p' (p -> 1),
// restricted to p in [p_lo, p_hi]; needs at least 4 points.
ExponentFit fit_exponent(const RatioCurve& curve, FitRegime regime, double p_lo, double p_hi);
// Raw-series variant; x holds the p values.
ExponentFit fit_loglog(std::span<const double> p, std::span<const double> value,
                       FitRegime regime);

struct Verdict {
    std::string experiment;
    std::string claim;   // the mathematical claim this verdict addresses
    double value = 0;    // measured quantity
    double lo = 0;       // acceptance window
    double hi = 0;
    bool pass = false;
    std::string detail;
};

std::string verdicts_to_json_string(std::span<const Verdict> verdicts);
std::string curve_to_csv(const RatioCurve& curve);
std::string fit_to_json_string(const ExponentFit& fit);

}  // namespace lplab
