#include "cocreate/stats.hpp"
#include "cocreate/error.hpp"

#include <Eigen/Dense>
#include <boost/math/distributions/students_t.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

namespace cocreate::stats
{
namespace
{

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

void require_same_length(std::span<const double> x, std::span<const double> y, std::size_t min_n,
                         const char* what)
{
    if (x.size() != y.size()) {
        throw ParameterError(fmt::format("{}: length mismatch ({} vs {})", what, x.size(), y.size()));
    }
    if (x.size() < min_n) {
        throw ParameterError(fmt::format("{}: need at least {} observations, got {}", what, min_n, x.size()));
    }
}

/// Sizes of runs of equal values.
std::vector<double> tie_groups(std::vector<double> values)
{
    std::sort(values.begin(), values.end());
    std::vector<double> sizes;
    for (std::size_t i = 0; i < values.size();) {
        std::size_t j = i + 1;
        while (j < values.size() && values[j] == values[i]) {
            ++j;
        }
        if (j - i > 1) {
            sizes.push_back(static_cast<double>(j - i));
        }
        i = j;
    }
    return sizes;
}

/// Dense relabeling of arbitrary ids; returns group count.
std::size_t densify(std::span<const std::uint32_t> ids, std::vector<std::uint32_t>& dense)
{
    std::map<std::uint32_t, std::uint32_t> index;
    dense.resize(ids.size());
    for (std::size_t i = 0; i < ids.size(); ++i) {
        auto [it, inserted] = index.try_emplace(ids[i], static_cast<std::uint32_t>(index.size()));
        dense[i] = it->second;
    }
    return index.size();
}

void fill_inference(RegressionResult& result, double df_t)
{
    const std::size_t k = result.coefficients.size();
    result.t_stat.assign(k, nan);
    result.p_value.assign(k, nan);
    result.ci_low.assign(k, nan);
    result.ci_high.assign(k, nan);
    const double crit = t_critical(df_t);
    for (std::size_t j = 0; j < k; ++j) {
        const double b = result.coefficients[j];
        const double s = result.se[j];
        if (s > 0.0) {
            result.t_stat[j] = b / s;
            result.p_value[j] = t_two_sided_p(result.t_stat[j], df_t);
        }
        else {
            result.t_stat[j] = b == 0.0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), b);
            result.p_value[j] = b == 0.0 ? 1.0 : 0.0;
        }
        result.ci_low[j] = b - crit * s;
        result.ci_high[j] = b + crit * s;
    }
}

} // namespace

double mean(std::span<const double> values)
{
    if (values.empty()) {
        throw ParameterError("mean: empty input");
    }
    return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double variance(std::span<const double> values)
{
    if (values.size() < 2) {
        throw ParameterError("variance: need at least two values");
    }
    const double m = mean(values);
    double ss = 0.0;
    for (double v : values) {
        ss += (v - m) * (v - m);
    }
    return ss / static_cast<double>(values.size() - 1);
}

double quantile(std::vector<double> values, double q)
{
    if (values.empty()) {
        throw ParameterError("quantile: empty input");
    }
    if (!(q >= 0.0 && q <= 1.0)) {
        throw ParameterError(fmt::format("quantile: q must lie in [0, 1], got {}", q));
    }
    std::sort(values.begin(), values.end());
    const double h = q * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

double median(std::vector<double> values)
{
    if (values.empty()) {
        throw ParameterError("median: empty input");
    }
    const std::size_t mid = values.size() / 2;
    std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
    const double upper = values[mid];
    if (values.size() % 2 == 1) {
        return upper;
    }
    const double lower = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
    return (lower + upper) / 2.0;
}

std::vector<double> midranks(std::span<const double> values)
{
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(values.size());
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i + 1;
        while (j < order.size() && values[order[j]] == values[order[i]]) {
            ++j;
        }
        const double rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
        for (std::size_t t = i; t < j; ++t) {
            ranks[order[t]] = rank;
        }
        i = j;
    }
    return ranks;
}

double t_two_sided_p(double t, double df)
{
    if (std::isnan(t)) {
        return nan;
    }
    if (std::isinf(t)) {
        return 0.0;
    }
    boost::math::students_t dist(df);
    return std::min(1.0, 2.0 * boost::math::cdf(boost::math::complement(dist, std::fabs(t))));
}

double t_critical(double df, double alpha)
{
    if (!(df > 0.0)) {
        throw ParameterError(fmt::format("t_critical: degrees of freedom must be positive, got {}", df));
    }
    boost::math::students_t dist(df);
    return boost::math::quantile(boost::math::complement(dist, alpha / 2.0));
}

double normal_two_sided_p(double z)
{
    return std::erfc(std::fabs(z) / std::sqrt(2.0));
}

CorrelationResult pearson(std::span<const double> x, std::span<const double> y)
{
    require_same_length(x, y, 3, "pearson");
    const double mx = mean(x);
    const double my = mean(y);
    double sxy = 0.0;
    double sxx = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0) {
        throw DegenerateInputError("pearson: zero variance input");
    }
    CorrelationResult result;
    result.method = CorrelationMethod::pearson;
    result.n = x.size();
    result.estimate = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
    const double r = result.estimate;
    const double df = static_cast<double>(x.size() - 2);
    if (std::fabs(r) >= 1.0) {
        result.p_value = 0.0;
    }
    else {
        result.p_value = t_two_sided_p(r * std::sqrt(df / (1.0 - r * r)), df);
    }
    return result;
}

CorrelationResult spearman(std::span<const double> x, std::span<const double> y)
{
    require_same_length(x, y, 3, "spearman");
    const auto rx = midranks(x);
    const auto ry = midranks(y);
    // all-tied input has zero rank variance and is rejected by pearson
    auto result = pearson(rx, ry);
    result.method = CorrelationMethod::spearman;
    result.p_value = normal_two_sided_p(result.estimate * std::sqrt(static_cast<double>(x.size() - 1)));
    return result;
}

CorrelationResult kendall(std::span<const double> x, std::span<const double> y)
{
    require_same_length(x, y, 3, "kendall");
    const std::size_t n = x.size();
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double dx = x[i] - x[j];
            const double dy = y[i] - y[j];
            const int sx = (dx > 0) - (dx < 0);
            const int sy = (dy > 0) - (dy < 0);
            s += sx * sy;
        }
    }
    const double nd = static_cast<double>(n);
    const double n0 = nd * (nd - 1.0) / 2.0;
    const auto tx = tie_groups({x.begin(), x.end()});
    const auto ty = tie_groups({y.begin(), y.end()});
    double n1 = 0.0, vt = 0.0, t1 = 0.0, t2 = 0.0;
    for (double t : tx) {
        n1 += t * (t - 1.0) / 2.0;
        vt += t * (t - 1.0) * (2.0 * t + 5.0);
        t1 += t * (t - 1.0);
        t2 += t * (t - 1.0) * (t - 2.0);
    }
    double n2 = 0.0, vu = 0.0, u1 = 0.0, u2 = 0.0;
    for (double u : ty) {
        n2 += u * (u - 1.0) / 2.0;
        vu += u * (u - 1.0) * (2.0 * u + 5.0);
        u1 += u * (u - 1.0);
        u2 += u * (u - 1.0) * (u - 2.0);
    }
    if (n1 == n0 || n2 == n0) {
        throw DegenerateInputError("kendall: all values tied in one variable");
    }
    CorrelationResult result;
    result.method = CorrelationMethod::kendall;
    result.n = n;
    result.estimate = std::clamp(s / std::sqrt((n0 - n1) * (n0 - n2)), -1.0, 1.0);
    const double v0 = nd * (nd - 1.0) * (2.0 * nd + 5.0);
    const double var_s = (v0 - vt - vu) / 18.0 + t1 * u1 / (2.0 * nd * (nd - 1.0)) +
                         t2 * u2 / (9.0 * nd * (nd - 1.0) * (nd - 2.0));
    result.p_value = normal_two_sided_p(s / std::sqrt(var_s));
    return result;
}

RegressionResult ols(std::span<const double> y, const std::vector<std::vector<double>>& regressors,
                     std::optional<std::span<const std::uint32_t>> cluster)
{
    const std::size_t n = y.size();
    const std::size_t k = regressors.size() + 1;
    for (const auto& column : regressors) {
        if (column.size() != n) {
            throw ParameterError(fmt::format("ols: regressor length {} does not match {} observations", column.size(), n));
        }
    }
    if (n <= k) {
        throw ParameterError(fmt::format("ols: {} observations cannot identify {} parameters", n, k));
    }
    if (cluster && cluster->size() != n) {
        throw ParameterError("ols: cluster ids must match the observations");
    }

    Eigen::MatrixXd design(n, k);
    Eigen::VectorXd response(n);
    for (std::size_t i = 0; i < n; ++i) {
        design(i, 0) = 1.0;
        for (std::size_t j = 1; j < k; ++j) {
            design(i, j) = regressors[j - 1][i];
        }
        response(i) = y[i];
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    if (static_cast<std::size_t>(qr.rank()) < k) {
        throw SingularDesignError(fmt::format("ols: design has rank {} < {}", qr.rank(), k));
    }
    const Eigen::VectorXd beta = qr.solve(response);
    const Eigen::VectorXd resid = response - design * beta;
    const Eigen::MatrixXd bread = (design.transpose() * design).inverse();

    RegressionResult result;
    result.estimator = Estimator::ols;
    result.n_obs = n;
    result.df = static_cast<double>(n - k);
    result.coefficients.assign(beta.data(), beta.data() + k);
    result.rss = resid.squaredNorm();
    const double tss = (response.array() - response.mean()).square().sum();
    result.r_squared = tss > 0.0 ? std::clamp(1.0 - result.rss / tss, 0.0, 1.0) : (result.rss == 0.0 ? 1.0 : 0.0);
    const double nd = static_cast<double>(n);
    result.aic = result.rss > 0.0 ? nd * std::log(result.rss / nd) + 2.0 * static_cast<double>(k + 1)
                                  : -std::numeric_limits<double>::infinity();

    Eigen::MatrixXd cov;
    if (cluster) {
        std::vector<std::uint32_t> dense;
        const std::size_t g = densify(*cluster, dense);
        if (g < 2) {
            throw ParameterError("ols: clustered errors need at least two clusters");
        }
        Eigen::MatrixXd scores = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(g), static_cast<Eigen::Index>(k));
        for (std::size_t i = 0; i < n; ++i) {
            scores.row(dense[i]) += design.row(static_cast<Eigen::Index>(i)) * resid(static_cast<Eigen::Index>(i));
        }
        const double gd = static_cast<double>(g);
        const double factor = gd / (gd - 1.0) * (nd - 1.0) / (nd - static_cast<double>(k));
        cov = factor * bread * (scores.transpose() * scores) * bread;
        result.clustered = true;
        result.n_clusters = g;
    }
    else {
        cov = (result.rss / result.df) * bread;
    }
    result.se.resize(k);
    for (std::size_t j = 0; j < k; ++j) {
        result.se[j] = std::sqrt(std::max(0.0, cov(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j))));
    }
    fill_inference(result, result.df);
    return result;
}

RegressionResult ols_quadratic(std::span<const double> x, std::span<const double> y)
{
    std::vector<double> linear(x.begin(), x.end());
    std::vector<double> squared(x.size());
    std::transform(x.begin(), x.end(), squared.begin(), [](double v) { return v * v; });
    auto result = ols(y, {linear, squared});
    result.estimator = Estimator::ols_quadratic;
    return result;
}

double theil_sen_slope(std::span<const double> x, std::span<const double> y)
{
    require_same_length(x, y, 2, "theil_sen");
    std::vector<double> slopes;
    slopes.reserve(x.size() * (x.size() - 1) / 2);
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = i + 1; j < x.size(); ++j) {
            if (x[i] != x[j]) {
                slopes.push_back((y[j] - y[i]) / (x[j] - x[i]));
            }
        }
    }
    if (slopes.empty()) {
        throw DegenerateInputError("theil_sen: all x values identical");
    }
    return median(std::move(slopes));
}

RegressionResult theil_sen(std::span<const double> x, std::span<const double> y, std::size_t bootstrap_iters,
                           Stream& rng)
{
    const double slope = theil_sen_slope(x, y);
    auto intercept_for = [](std::span<const double> xs, std::span<const double> ys, double b) {
        std::vector<double> offsets(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) {
            offsets[i] = ys[i] - b * xs[i];
        }
        return median(std::move(offsets));
    };

    RegressionResult result;
    result.estimator = Estimator::theil_sen;
    result.n_obs = x.size();
    result.df = static_cast<double>(x.size()) - 2.0;
    result.coefficients = {intercept_for(x, y, slope), slope};
    result.r_squared = nan;
    result.aic = nan;
    result.rss = nan;
    result.se.assign(2, nan);
    result.t_stat.assign(2, nan);
    result.p_value.assign(2, nan);
    result.ci_low.assign(2, nan);
    result.ci_high.assign(2, nan);
    if (bootstrap_iters == 0) {
        return result;
    }

    const std::size_t n = x.size();
    std::vector<double> boot_slopes;
    std::vector<double> boot_intercepts;
    boot_slopes.reserve(bootstrap_iters);
    boot_intercepts.reserve(bootstrap_iters);
    std::vector<double> bx(n), by(n);
    for (std::size_t b = 0; b < bootstrap_iters; ++b) {
        bool distinct = false;
        for (std::size_t attempt = 0; attempt < 100 && !distinct; ++attempt) {
            for (std::size_t i = 0; i < n; ++i) {
                const auto pick = uniform_index(rng, n);
                bx[i] = x[pick];
                by[i] = y[pick];
            }
            distinct = std::adjacent_find(bx.begin(), bx.end(), std::not_equal_to<>()) != bx.end();
        }
        if (!distinct) {
            continue;
        }
        const double s = theil_sen_slope(bx, by);
        boot_slopes.push_back(s);
        boot_intercepts.push_back(intercept_for(bx, by, s));
    }
    if (boot_slopes.size() >= 2) {
        result.se = {std::sqrt(variance(boot_intercepts)), std::sqrt(variance(boot_slopes))};
        result.ci_low = {quantile(boot_intercepts, 0.025), quantile(boot_slopes, 0.025)};
        result.ci_high = {quantile(boot_intercepts, 0.975), quantile(boot_slopes, 0.975)};
    }
    return result;
}

Residualized residualize(std::span<const PanelObservation> observations, double tolerance, std::size_t max_sweeps)
{
    const std::size_t n = observations.size();
    std::uint32_t ga = 0;
    std::uint32_t gb = 0;
    for (const auto& o : observations) {
        ga = std::max(ga, o.group_a + 1);
        gb = std::max(gb, o.group_b + 1);
    }
    std::vector<double> count_a(ga, 0.0), count_b(gb, 0.0);
    for (const auto& o : observations) {
        count_a[o.group_a] += 1.0;
        count_b[o.group_b] += 1.0;
    }
    auto nonempty = [](const std::vector<double>& c) {
        return std::count_if(c.begin(), c.end(), [](double v) { return v > 0.0; });
    };
    if (nonempty(count_a) < 2 || nonempty(count_b) < 2) {
        throw ParameterError("two-way fixed effects need at least two groups in each dimension");
    }

    Residualized out;
    out.x.resize(n);
    out.y.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.x[i] = observations[i].x;
        out.y[i] = observations[i].y;
    }

    std::vector<double> sums;
    auto demean = [&](std::vector<double>& v, auto group_of, const std::vector<double>& counts) {
        sums.assign(counts.size(), 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            sums[group_of(observations[i])] += v[i];
        }
        for (std::size_t g = 0; g < counts.size(); ++g) {
            if (counts[g] > 0.0) {
                sums[g] /= counts[g];
            }
        }
        for (std::size_t i = 0; i < n; ++i) {
            v[i] -= sums[group_of(observations[i])];
        }
    };
    auto sweep = [&](std::vector<double> v) {
        demean(v, [](const PanelObservation& o) { return o.group_a; }, count_a);
        demean(v, [](const PanelObservation& o) { return o.group_b; }, count_b);
        return v;
    };
    auto max_change = [](const std::vector<double>& a, const std::vector<double>& b) {
        double change = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            change = std::max(change, std::fabs(a[i] - b[i]));
        }
        return change;
    };
    // Irons-Tuck extrapolation from v, T(v), T(T(v))
    auto extrapolate = [](const std::vector<double>& v, const std::vector<double>& tv, std::vector<double> ttv) {
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            const double d1 = ttv[i] - tv[i];
            const double d2 = d1 - tv[i] + v[i];
            num += d1 * d2;
            den += d2 * d2;
        }
        if (den > 0.0) {
            const double c = num / den;
            for (std::size_t i = 0; i < v.size(); ++i) {
                ttv[i] -= c * (ttv[i] - tv[i]);
            }
        }
        return ttv;
    };

    out.sweeps = 0;
    while (out.sweeps < max_sweeps) {
        auto tx = sweep(out.x);
        auto ty = sweep(out.y);
        ++out.sweeps;
        const double change = std::max(max_change(tx, out.x), max_change(ty, out.y));
        if (change < tolerance || out.sweeps == max_sweeps) {
            out.x = std::move(tx);
            out.y = std::move(ty);
            break;
        }
        auto ttx = sweep(tx);
        auto tty = sweep(ty);
        ++out.sweeps;
        out.x = extrapolate(out.x, tx, std::move(ttx));
        out.y = extrapolate(out.y, ty, std::move(tty));
    }
    return out;
}

RegressionResult two_way_fe(std::span<const PanelObservation> observations, double tolerance, std::size_t max_sweeps)
{
    const auto res = residualize(observations, tolerance, max_sweeps);
    const std::size_t n = observations.size();

    double sxx = 0.0, sxy = 0.0, raw = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += res.x[i] * res.x[i];
        sxy += res.x[i] * res.y[i];
        raw += observations[i].x * observations[i].x;
    }
    if (sxx <= 1e-20 * (raw + 1.0)) {
        throw NoIdentificationError("two_way_fe: regressor has no variation within the fixed effects");
    }

    std::vector<std::uint32_t> a_ids(n), b_ids(n), c_ids(n), dense;
    for (std::size_t i = 0; i < n; ++i) {
        a_ids[i] = observations[i].group_a;
        b_ids[i] = observations[i].group_b;
        c_ids[i] = observations[i].cluster;
    }
    const std::size_t ga = densify(a_ids, dense);
    const std::size_t gb = densify(b_ids, dense);
    const std::size_t g = densify(c_ids, dense);
    if (g < 2) {
        throw ParameterError("two_way_fe: clustered errors need at least two clusters");
    }
    const double nd = static_cast<double>(n);
    const double df = nd - 1.0 - static_cast<double>(ga - 1) - static_cast<double>(gb - 1);
    if (df <= 0.0) {
        throw ParameterError("two_way_fe: no residual degrees of freedom");
    }

    const double beta = sxy / sxx;
    std::vector<double> score(g, 0.0);
    double rss = 0.0, tss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double e = res.y[i] - beta * res.x[i];
        rss += e * e;
        tss += res.y[i] * res.y[i];
        score[dense[i]] += res.x[i] * e;
    }
    double meat = 0.0;
    for (double s : score) {
        meat += s * s;
    }
    const double gd = static_cast<double>(g);
    const double factor = gd / (gd - 1.0) * (nd - 1.0) / df;

    RegressionResult result;
    result.estimator = Estimator::two_way_fe;
    result.coefficients = {beta};
    result.se = {std::sqrt(factor * meat) / sxx};
    result.n_obs = n;
    result.n_clusters = g;
    result.df = df;
    result.clustered = true;
    result.rss = rss;
    result.r_squared = tss > 0.0 ? std::clamp(1.0 - rss / tss, 0.0, 1.0) : 1.0;
    result.aic = nan;
    fill_inference(result, gd - 1.0);
    return result;
}

RegressionResult clustered_mean_test(std::span<const double> values, std::span<const std::uint32_t> cluster)
{
    if (values.size() != cluster.size()) {
        throw ParameterError("clustered_mean_test: cluster ids must match the values");
    }
    if (values.empty()) {
        throw ParameterError("clustered_mean_test: empty input");
    }
    std::vector<std::uint32_t> dense;
    const std::size_t g = densify(cluster, dense);
    if (g < 2) {
        throw ParameterError("clustered_mean_test: need at least two clusters");
    }
    const std::size_t n = values.size();
    const double m = mean(values);
    std::vector<double> score(g, 0.0);
    double rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        score[dense[i]] += values[i] - m;
        rss += (values[i] - m) * (values[i] - m);
    }
    double meat = 0.0;
    for (double s : score) {
        meat += s * s;
    }
    const double nd = static_cast<double>(n);
    const double gd = static_cast<double>(g);
    // CR1 with k = 1: the (n-1)/(n-k) term is 1
    const double var = gd / (gd - 1.0) * meat / (nd * nd);

    RegressionResult result;
    result.estimator = Estimator::clustered_mean;
    result.coefficients = {m};
    result.se = {std::sqrt(var)};
    result.n_obs = n;
    result.n_clusters = g;
    result.df = gd - 1.0;
    result.clustered = true;
    result.rss = rss;
    result.r_squared = 0.0;
    result.aic = nan;
    fill_inference(result, gd - 1.0);
    return result;
}

double cohens_dz(std::span<const double> differences)
{
    if (differences.size() < 2) {
        throw ParameterError("cohens_dz: need at least two differences");
    }
    const double m = mean(differences);
    const double sd = std::sqrt(variance(differences));
    if (sd <= 1e-12 * std::max(1.0, std::fabs(m))) {
        throw DegenerateInputError("cohens_dz: differences have zero spread");
    }
    return m / sd;
}

Interval bootstrap_ci(std::span<const double> values, std::size_t iters, Stream& rng)
{
    if (values.size() < 2) {
        throw ParameterError("bootstrap_ci: need at least two values");
    }
    if (iters < 100) {
        throw ParameterError(fmt::format("bootstrap_ci: iters must be >= 100, got {}", iters));
    }
    const std::size_t n = values.size();
    std::vector<double> stats(iters);
    for (auto& s : stats) {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            total += values[uniform_index(rng, n)];
        }
        s = total / static_cast<double>(n);
    }
    return {quantile(stats, 0.025), quantile(stats, 0.975)};
}

std::vector<BinPoint> quantile_bin_partial(std::span<const PanelObservation> observations, std::size_t bins)
{
    const std::size_t n = observations.size();
    if (bins < 1 || bins > n) {
        throw ParameterError(fmt::format("quantile_bin_partial: need 1 <= bins <= n, got bins={} n={}", bins, n));
    }
    const auto res = residualize(observations);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return res.x[a] < res.x[b]; });

    std::vector<BinPoint> points(bins);
    const std::size_t base = n / bins;
    const std::size_t extra = n % bins;
    std::size_t cursor = 0;
    for (std::size_t b = 0; b < bins; ++b) {
        const std::size_t size = base + (b < extra ? 1 : 0);
        double sx = 0.0, sy = 0.0;
        for (std::size_t i = 0; i < size; ++i, ++cursor) {
            sx += res.x[order[cursor]];
            sy += res.y[order[cursor]];
        }
        points[b] = {sx / static_cast<double>(size), sy / static_cast<double>(size)};
    }
    return points;
}

std::string_view to_string(CorrelationMethod method)
{
    switch (method) {
    case CorrelationMethod::pearson:
        return "pearson";
    case CorrelationMethod::spearman:
        return "spearman";
    case CorrelationMethod::kendall:
        return "kendall";
    }
    return "unknown";
}

std::string_view to_string(Estimator estimator)
{
    switch (estimator) {
    case Estimator::ols:
        return "ols";
    case Estimator::ols_quadratic:
        return "ols_quadratic";
    case Estimator::theil_sen:
        return "theil_sen";
    case Estimator::two_way_fe:
        return "two_way_fe";
    case Estimator::clustered_mean:
        return "clustered_mean";
    }
    return "unknown";
}

} // namespace cocreate::stats
