#pragma once
// Self-contained statistics toolbox: correlation with p-values, Welch's
// one-tailed t, intraclass correlation (consistency form), Shapiro-Wilk
// normality, Jensen-Shannon divergence, OLS with interaction designs,
// distribution moments, and Shannon entropy. Pure functions throughout;
// summation order is fixed for reproducibility.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "coglab/error.hpp"

namespace coglab::stats {

struct CorrelationResult {
    double r = 0.0;
    double p_two_sided = 0.0;
};

struct WelchResult {
    double t = 0.0;
    double df = 0.0;
    double p_one_tailed = 0.0;  // H1: mean(a) > mean(b)
};

struct ShapiroResult {
    double w = 0.0;
    double p = 0.0;
};

struct RegressionFit {
    std::vector<double> coefficients;
    std::vector<double> standard_errors;
    std::vector<double> t_stats;
    std::vector<double> p_values;  // two-sided
    double r_squared = 0.0;
    double residual_variance = 0.0;
    std::size_t n_rows = 0;
};

struct Moments {
    double mean = 0.0;
    double sd = 0.0;  // population convention (n divisor)
    std::optional<double> cv;               // sd/mean; 0 when sd == 0; absent when mean == 0
    std::optional<double> skewness;         // absent when sd == 0
    std::optional<double> kurtosis_excess;  // absent when sd == 0
};

// Equal-width histogram with a normalized mass function. Values equal to
// the upper edge fall into the last bin.
class Histogram {
public:
    Histogram(std::vector<double> edges, std::span<const double> data);

    static Histogram with_bins(std::span<const double> data, std::size_t bins,
                               double lo, double hi);

    const std::vector<double>& edges() const { return edges_; }
    const std::vector<double>& counts() const { return counts_; }
    std::vector<double> mass() const;  // counts normalized to sum 1
    double total() const { return total_; }

private:
    std::vector<double> edges_;
    std::vector<double> counts_;
    double total_ = 0.0;
};

CorrelationResult pearson(std::span<const double> x, std::span<const double> y);

WelchResult welch_t_one_tailed(std::span<const double> a, std::span<const double> b);

// Two-way mixed, consistency, single-measure ICC over rater pairs.
double icc(std::span<const std::pair<double, double>> pairs);

// Royston's approximation; valid for 3 <= n <= 5000.
ShapiroResult shapiro_wilk(std::span<const double> x);

// Jensen-Shannon divergence in base 2 over two mass functions that share
// one support; range [0, 1], with 0*log(0) := 0.
double js_divergence(std::span<const double> p, std::span<const double> q);

// Least squares on an explicit design matrix (row-major, including any
// intercept/interaction columns the caller built).
RegressionFit ols(const std::vector<std::vector<double>>& design,
                  std::span<const double> y);

Moments moments(std::span<const double> x);

// Shannon entropy (natural log) of a category-count vector.
double entropy(std::span<const double> counts);

// Distribution helpers shared with other modules.
double normal_cdf(double z);
double normal_quantile(double p);                 // inverse standard normal
double student_t_sf(double t, double df);         // P(T > t)
double student_t_two_sided_p(double t, double df);

}  // namespace coglab::stats
