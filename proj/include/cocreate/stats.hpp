#pragma once

#include "cocreate/random.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace cocreate::stats
{

enum class CorrelationMethod { pearson, spearman, kendall };

struct CorrelationResult {
    double estimate = 0.0;
    double p_value = 1.0;
    std::size_t n = 0;
    CorrelationMethod method = CorrelationMethod::pearson;
};

enum class Estimator { ols, ols_quadratic, theil_sen, two_way_fe, clustered_mean };

/**
 * Fitted coefficients with 95% intervals.
 *
 * For OLS fits the first coefficient is the intercept. `se` holds CR1
 * cluster-robust errors when `clustered` is set. `aic` is the Gaussian AIC
 * without its additive constant, so only differences between fits are
 * meaningful. Fields that an estimator does not produce stay NaN.
 */
struct RegressionResult {
    Estimator estimator = Estimator::ols;
    std::vector<double> coefficients;
    std::vector<double> se;
    std::vector<double> t_stat;
    std::vector<double> p_value;
    std::vector<double> ci_low;
    std::vector<double> ci_high;
    double r_squared = 0.0;
    double aic = 0.0;
    double rss = 0.0;
    std::size_t n_obs = 0;
    std::size_t n_clusters = 0;
    double df = 0.0;
    bool clustered = false;
};

struct Interval {
    double low = 0.0;
    double high = 0.0;
};

/// One observation of an outcome on a regressor with two crossed fixed effects.
struct PanelObservation {
    double y = 0.0;
    double x = 0.0;
    std::uint32_t group_a = 0;
    std::uint32_t group_b = 0;
    std::uint32_t cluster = 0;
};

struct BinPoint {
    double mean_x = 0.0;
    double mean_y = 0.0;
};

/// Residualized regressor and outcome after absorbing both fixed effects.
struct Residualized {
    std::vector<double> x;
    std::vector<double> y;
    std::size_t sweeps = 0;
};

double mean(std::span<const double> values);

/// Sample variance (ddof 1).
double variance(std::span<const double> values);

/// Linear-interpolated quantile (Hyndman-Fan type 7) of unsorted data, q in [0, 1].
double quantile(std::vector<double> values, double q);

double median(std::vector<double> values);

/// Average ranks, 1-based; ties share the mean of their positions.
std::vector<double> midranks(std::span<const double> values);

/// Two-sided p-value of a t statistic with `df` degrees of freedom.
double t_two_sided_p(double t, double df);

/// Upper (1 - alpha/2) Student-t quantile.
double t_critical(double df, double alpha = 0.05);

/// Two-sided standard-normal p-value.
double normal_two_sided_p(double z);

/// Pearson r with a Student-t(n-2) p-value.
CorrelationResult pearson(std::span<const double> x, std::span<const double> y);

/// Pearson on midranks; p-value from z = rho * sqrt(n - 1).
CorrelationResult spearman(std::span<const double> x, std::span<const double> y);

/// Kendall tau-b; p-value from the tie-corrected normal approximation.
CorrelationResult kendall(std::span<const double> x, std::span<const double> y);

/**
 * Least squares of y on an intercept plus the given regressor columns.
 *
 * With `cluster` ids the standard errors are CR1:
 * G/(G-1) * (n-1)/(n-k) * (X'X)^-1 (sum_g X_g' u_g u_g' X_g) (X'X)^-1.
 * Intervals use Student-t(n - k) either way.
 */
RegressionResult ols(std::span<const double> y, const std::vector<std::vector<double>>& regressors,
                     std::optional<std::span<const std::uint32_t>> cluster = std::nullopt);

/// y on x and x^2.
RegressionResult ols_quadratic(std::span<const double> x, std::span<const double> y);

/**
 * Theil-Sen line: slope is the median of pairwise slopes over x_i != x_j,
 * intercept the median of y - slope * x. The slope interval is a percentile
 * bootstrap over resampled observations. Coefficients are {intercept, slope}.
 */
RegressionResult theil_sen(std::span<const double> x, std::span<const double> y, std::size_t bootstrap_iters,
                           Stream& rng);

/// Median of the pairwise slopes only.
double theil_sen_slope(std::span<const double> x, std::span<const double> y);

/**
 * Alternating within-demeaning of x and y over group_a then group_b until the
 * largest change in a sweep drops below `tolerance` or `max_sweeps` is hit.
 * Every second sweep is followed by an Irons-Tuck extrapolation step.
 */
Residualized residualize(std::span<const PanelObservation> observations, double tolerance = 1e-10,
                         std::size_t max_sweeps = 100);

/**
 * Two-way fixed effects slope of y on x with CR1 errors clustered on `cluster`.
 *
 * Residual degrees of freedom are n - 1 - (G_a - 1) - (G_b - 1) and enter the
 * CR1 factor as (n-1)/df; the interval uses Student-t(G - 1). r_squared is the
 * within R^2 of the residualized regression. The single coefficient is the slope.
 */
RegressionResult two_way_fe(std::span<const PanelObservation> observations, double tolerance = 1e-10,
                            std::size_t max_sweeps = 100);

/**
 * Intercept-only regression with CR1 errors clustered on `cluster`; the
 * interval and p-value use Student-t(G - 1).
 */
RegressionResult clustered_mean_test(std::span<const double> values, std::span<const std::uint32_t> cluster);

/// mean / sample sd of paired differences.
double cohens_dz(std::span<const double> differences);

/// Percentile 2.5/97.5 bootstrap interval of the mean.
Interval bootstrap_ci(std::span<const double> values, std::size_t iters, Stream& rng);

/**
 * Binned partial relationship: residualize both variables like two_way_fe,
 * sort by residual x and split into `bins` equal-count bins, the first
 * (n mod bins) of them one observation larger.
 */
std::vector<BinPoint> quantile_bin_partial(std::span<const PanelObservation> observations, std::size_t bins);

std::string_view to_string(CorrelationMethod method);
std::string_view to_string(Estimator estimator);

} // namespace cocreate::stats
