#include "coglab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace coglab::stats {

namespace {

double mean_of(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v;
    return s / static_cast<double>(x.size());
}

// Sample variance (n-1 divisor); 0 for n < 2.
double sample_variance(std::span<const double> x) {
    if (x.size() < 2) return 0.0;
    const double m = mean_of(x);
    double s = 0.0;
    for (double v : x) s += (v - m) * (v - m);
    return s / static_cast<double>(x.size() - 1);
}

// Regularized incomplete beta I_x(a, b) via Lentz's continued fraction.
double betacf(double a, double b, double x) {
    constexpr int kMaxIter = 300;
    constexpr double kEps = 3e-14;
    constexpr double kFpMin = 1e-300;
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kFpMin) d = kFpMin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kFpMin) d = kFpMin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) break;
    }
    return h;
}

double incbeta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double ln_bt = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                         a * std::log(x) + b * std::log1p(-x);
    const double bt = std::exp(ln_bt);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return bt * betacf(a, b, x) / a;
    }
    return 1.0 - bt * betacf(b, a, 1.0 - x) / b;
}

}  // namespace

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

// Upper tail computed directly so far-tail values do not cancel to zero.
static double normal_sf(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

// Wichura's AS 241 (PPND16): inverse standard normal to ~1e-15.
double normal_quantile(double p) {
    if (p <= 0.0 || p >= 1.0) {
        throw NumericError("normal_quantile: p must be in (0,1)");
    }
    const double q = p - 0.5;
    double r;
    if (std::fabs(q) <= 0.425) {
        r = 0.180625 - q * q;
        return q *
               (((((((2509.0809287301226727 * r + 33430.575583588128105) * r +
                     67265.770927008700853) * r + 45921.953931549871457) * r +
                   13731.693765509461125) * r + 1971.5909503065514427) * r +
                 133.14166789178437745) * r + 3.387132872796366608) /
               (((((((5226.495278852545703 * r + 28729.085735721942674) * r +
                     39307.89580009271061) * r + 21213.794301586595867) * r +
                   5394.1960214247511077) * r + 687.1870074920579083) * r +
                 42.313330701600911252) * r + 1.0);
    }
    r = q < 0.0 ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double val;
    if (r <= 5.0) {
        r -= 1.6;
        val = (((((((7.7454501427834140764e-4 * r + 0.0227238449892691845833) * r +
                    0.24178072517745061177) * r + 1.27045825245236838258) * r +
                  3.64784832476320460504) * r + 5.7694972214606914055) * r +
                4.6303378461565452959) * r + 1.42343711074968357734) /
              (((((((1.05075007164441684324e-9 * r + 5.475938084995344946e-4) * r +
                    0.0151986665636164571966) * r + 0.14810397642748007459) * r +
                  0.68976733498510000455) * r + 1.6763848301838038494) * r +
                2.05319162663775882187) * r + 1.0);
    } else {
        r -= 5.0;
        val = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                    0.0012426609473880784386) * r + 0.026532189526576123093) * r +
                  0.29656057182850489123) * r + 1.7848265399172913358) * r +
                5.4637849111641143699) * r + 6.6579046435011037772) /
              (((((((2.04426310338993978564e-15 * r + 1.4215117583164458887e-7) * r +
                    1.8463183175100546818e-5) * r + 7.868691311456132591e-4) * r +
                  0.0148753612908506148525) * r + 0.13692988092273580531) * r +
                0.59983220655588793769) * r + 1.0);
    }
    return q < 0.0 ? -val : val;
}

double student_t_sf(double t, double df) {
    if (df <= 0.0) throw NumericError("student_t_sf: df must be positive");
    if (std::isinf(t)) return t > 0 ? 0.0 : 1.0;
    const double x = df / (df + t * t);
    const double tail = 0.5 * incbeta(0.5 * df, 0.5, x);
    return t >= 0.0 ? tail : 1.0 - tail;
}

double student_t_two_sided_p(double t, double df) {
    const double p = 2.0 * student_t_sf(std::fabs(t), df);
    return std::min(p, 1.0);
}

CorrelationResult pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw InputError("pearson: length mismatch");
    const std::size_t n = x.size();
    if (n < 3) throw InputError("pearson: need at least 3 observations");
    const double mx = mean_of(x);
    const double my = mean_of(y);
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0.0 || syy == 0.0) throw NumericError("pearson: zero variance input");
    double r = sxy / std::sqrt(sxx * syy);
    r = std::clamp(r, -1.0, 1.0);
    const double df = static_cast<double>(n - 2);
    double p;
    if (std::fabs(r) >= 1.0) {
        p = 0.0;
    } else {
        const double t = r * std::sqrt(df / (1.0 - r * r));
        p = student_t_two_sided_p(t, df);
    }
    return {r, p};
}

WelchResult welch_t_one_tailed(std::span<const double> a, std::span<const double> b) {
    if (a.size() < 2 || b.size() < 2) {
        throw InputError("welch_t: both samples need n >= 2");
    }
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    const double va = sample_variance(a);
    const double vb = sample_variance(b);
    // Degenerate means constant up to rounding residue, not merely tiny.
    const auto degenerate = [](double var, std::span<const double> x) {
        const double m = mean_of(x);
        return var <= 1e-24 * std::max(1.0, m * m);
    };
    if (degenerate(va, a) && degenerate(vb, b)) {
        throw NumericError("welch_t: degenerate variance in both samples");
    }
    const double se2 = va / na + vb / nb;
    const double t = (mean_of(a) - mean_of(b)) / std::sqrt(se2);
    const double df = se2 * se2 /
                      (va * va / (na * na * (na - 1.0)) + vb * vb / (nb * nb * (nb - 1.0)));
    return {t, df, student_t_sf(t, df)};
}

double icc(std::span<const std::pair<double, double>> pairs) {
    const std::size_t n = pairs.size();
    if (n < 3) throw InputError("icc: need at least 3 subject pairs");
    constexpr double k = 2.0;
    double grand = 0.0;
    for (const auto& [a, b] : pairs) grand += a + b;
    grand /= (k * static_cast<double>(n));

    double col1 = 0.0, col2 = 0.0;
    for (const auto& [a, b] : pairs) {
        col1 += a;
        col2 += b;
    }
    col1 /= static_cast<double>(n);
    col2 /= static_cast<double>(n);

    double ss_rows = 0.0, ss_cols = 0.0, ss_total = 0.0;
    for (const auto& [a, b] : pairs) {
        const double row_mean = (a + b) / k;
        ss_rows += k * (row_mean - grand) * (row_mean - grand);
        ss_total += (a - grand) * (a - grand) + (b - grand) * (b - grand);
    }
    ss_cols = static_cast<double>(n) *
              ((col1 - grand) * (col1 - grand) + (col2 - grand) * (col2 - grand));
    const double ss_err = ss_total - ss_rows - ss_cols;

    const double ms_rows = ss_rows / static_cast<double>(n - 1);
    const double ms_err = std::max(0.0, ss_err) / static_cast<double>(n - 1);  // (n-1)(k-1), k=2
    if (ms_rows == 0.0) throw NumericError("icc: zero between-subject variance");
    return (ms_rows - ms_err) / (ms_rows + (k - 1.0) * ms_err);
}

// AS R94 (Royston 1995). W from the order statistics against approximate
// normal scores; p from the normalizing transforms for small/large n.
ShapiroResult shapiro_wilk(std::span<const double> x) {
    const std::size_t n = x.size();
    if (n < 3 || n > 5000) throw InputError("shapiro_wilk: n must be in [3, 5000]");
    std::vector<double> s(x.begin(), x.end());
    std::sort(s.begin(), s.end());
    if (s.front() == s.back()) throw NumericError("shapiro_wilk: constant sample");

    const std::size_t half = n / 2;
    std::vector<double> m(half);
    double ssq_m = 0.0;
    for (std::size_t i = 0; i < half; ++i) {
        m[i] = normal_quantile((static_cast<double>(i + 1) - 0.375) /
                               (static_cast<double>(n) + 0.25));
        ssq_m += 2.0 * m[i] * m[i];
    }

    std::vector<double> a(half);
    const double nd = static_cast<double>(n);
    if (n == 3) {
        a[0] = -std::sqrt(0.5);  // lower-tail coefficient
    } else {
        const double rsn = 1.0 / std::sqrt(nd);
        const double mn = -m[0];  // largest normal score
        const double an =
            -2.706056 * std::pow(rsn, 5) + 4.434685 * std::pow(rsn, 4) -
            2.071190 * std::pow(rsn, 3) - 0.147981 * rsn * rsn + 0.221157 * rsn +
            mn / std::sqrt(ssq_m);
        if (n <= 5) {
            const double phi = (ssq_m - 2.0 * mn * mn) / (1.0 - 2.0 * an * an);
            a[0] = -an;
            for (std::size_t i = 1; i < half; ++i) a[i] = m[i] / std::sqrt(phi);
        } else {
            const double mn1 = -m[1];
            const double an1 =
                -3.582633 * std::pow(rsn, 5) + 5.682633 * std::pow(rsn, 4) -
                1.752461 * std::pow(rsn, 3) - 0.293762 * rsn * rsn + 0.042981 * rsn +
                mn1 / std::sqrt(ssq_m);
            const double phi = (ssq_m - 2.0 * mn * mn - 2.0 * mn1 * mn1) /
                               (1.0 - 2.0 * an * an - 2.0 * an1 * an1);
            a[0] = -an;
            a[1] = -an1;
            for (std::size_t i = 2; i < half; ++i) a[i] = m[i] / std::sqrt(phi);
        }
    }

    const double xbar = mean_of(s);
    double ssd = 0.0;
    for (double v : s) ssd += (v - xbar) * (v - xbar);
    double b = 0.0;
    for (std::size_t i = 0; i < half; ++i) {
        b += -a[i] * (s[n - 1 - i] - s[i]);  // a[i] stored with sign of lower tail
    }
    double w = b * b / ssd;
    w = std::min(w, 1.0);

    double p;
    if (n == 3) {
        constexpr double kPi6 = 1.90985931710274;   // 6/pi
        constexpr double kStqr = 1.04719755119660;  // asin(sqrt(3/4))
        p = kPi6 * (std::asin(std::sqrt(w)) - kStqr);
        p = std::clamp(p, 0.0, 1.0);
    } else if (n <= 11) {
        const double gamma = -2.273 + 0.459 * nd;
        const double wf = -std::log(gamma - std::log1p(-w));
        const double mu = 0.5440 - 0.39978 * nd + 0.025054 * nd * nd -
                          0.0006714 * nd * nd * nd;
        const double sigma = std::exp(1.3822 - 0.77857 * nd + 0.062767 * nd * nd -
                                      0.0020322 * nd * nd * nd);
        p = normal_sf((wf - mu) / sigma);
    } else {
        const double ln_n = std::log(nd);
        const double wf = std::log1p(-w);
        const double mu = -1.5861 - 0.31082 * ln_n - 0.083751 * ln_n * ln_n +
                          0.0038915 * ln_n * ln_n * ln_n;
        const double sigma = std::exp(-0.4803 - 0.082676 * ln_n + 0.0030302 * ln_n * ln_n);
        p = normal_sf((wf - mu) / sigma);
    }
    return {w, p};
}

double js_divergence(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size()) throw InputError("js_divergence: mismatched supports");
    if (p.empty()) throw InputError("js_divergence: empty distributions");
    double sp = 0.0, sq = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] < 0.0 || q[i] < 0.0) throw InputError("js_divergence: negative mass");
        sp += p[i];
        sq += q[i];
    }
    if (std::fabs(sp - 1.0) > 1e-9 || std::fabs(sq - 1.0) > 1e-9) {
        throw InputError("js_divergence: inputs must be normalized mass functions");
    }
    const double log2 = std::log(2.0);
    double acc = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double m = 0.5 * (p[i] + q[i]);
        if (p[i] > 0.0) acc += 0.5 * p[i] * std::log(p[i] / m) / log2;
        if (q[i] > 0.0) acc += 0.5 * q[i] * std::log(q[i] / m) / log2;
    }
    return std::clamp(acc, 0.0, 1.0);
}

RegressionFit ols(const std::vector<std::vector<double>>& design,
                  std::span<const double> y) {
    const std::size_t n = design.size();
    if (n == 0 || n != y.size()) throw InputError("ols: design/response size mismatch");
    const std::size_t k = design[0].size();
    if (k == 0) throw InputError("ols: empty design row");
    if (n <= k) throw InputError("ols: need more rows than columns");
    for (const auto& row : design) {
        if (row.size() != k) throw InputError("ols: ragged design matrix");
    }

    // Normal equations with partial pivoting; pivot collapse flags rank
    // deficiency (duplicated or collinear columns).
    std::vector<std::vector<double>> xtx(k, std::vector<double>(k, 0.0));
    std::vector<double> xty(k, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t i = 0; i < k; ++i) {
            xty[i] += design[r][i] * y[r];
            for (std::size_t j = i; j < k; ++j) xtx[i][j] += design[r][i] * design[r][j];
        }
    }
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < i; ++j) xtx[i][j] = xtx[j][i];
    }

    double max_diag = 0.0;
    for (std::size_t i = 0; i < k; ++i) max_diag = std::max(max_diag, std::fabs(xtx[i][i]));
    const double pivot_tol = std::max(max_diag, 1.0) * 1e-12;

    // Invert X'X via Gauss-Jordan (needed whole for standard errors).
    std::vector<std::vector<double>> inv(k, std::vector<double>(k, 0.0));
    for (std::size_t i = 0; i < k; ++i) inv[i][i] = 1.0;
    auto a = xtx;
    for (std::size_t col = 0; col < k; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < k; ++r) {
            if (std::fabs(a[r][col]) > std::fabs(a[pivot][col])) pivot = r;
        }
        if (std::fabs(a[pivot][col]) < pivot_tol) {
            throw NumericError("ols: rank-deficient design");
        }
        std::swap(a[col], a[pivot]);
        std::swap(inv[col], inv[pivot]);
        const double d = a[col][col];
        for (std::size_t j = 0; j < k; ++j) {
            a[col][j] /= d;
            inv[col][j] /= d;
        }
        for (std::size_t r = 0; r < k; ++r) {
            if (r == col) continue;
            const double f = a[r][col];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < k; ++j) {
                a[r][j] -= f * a[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }

    RegressionFit fit;
    fit.n_rows = n;
    fit.coefficients.assign(k, 0.0);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) fit.coefficients[i] += inv[i][j] * xty[j];
    }

    double ss_res = 0.0;
    const double ybar = mean_of(y);
    double ss_tot = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
        double yhat = 0.0;
        for (std::size_t j = 0; j < k; ++j) yhat += design[r][j] * fit.coefficients[j];
        const double e = y[r] - yhat;
        ss_res += e * e;
        ss_tot += (y[r] - ybar) * (y[r] - ybar);
    }
    const double df = static_cast<double>(n - k);
    fit.residual_variance = ss_res / df;
    fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : (ss_res == 0.0 ? 1.0 : 0.0);

    fit.standard_errors.assign(k, 0.0);
    fit.t_stats.assign(k, 0.0);
    fit.p_values.assign(k, 1.0);
    for (std::size_t i = 0; i < k; ++i) {
        const double se = std::sqrt(std::max(0.0, fit.residual_variance * inv[i][i]));
        fit.standard_errors[i] = se;
        if (se > 0.0) {
            fit.t_stats[i] = fit.coefficients[i] / se;
            fit.p_values[i] = student_t_two_sided_p(fit.t_stats[i], df);
        } else {
            fit.t_stats[i] = fit.coefficients[i] == 0.0
                                 ? 0.0
                                 : std::numeric_limits<double>::infinity();
            fit.p_values[i] = fit.coefficients[i] == 0.0 ? 1.0 : 0.0;
        }
    }
    return fit;
}

Moments moments(std::span<const double> x) {
    if (x.size() < 2) throw InputError("moments: need n >= 2");
    const double n = static_cast<double>(x.size());
    Moments out;
    out.mean = mean_of(x);
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double v : x) {
        const double d = v - out.mean;
        m2 += d * d;
        m3 += d * d * d;
        m4 += d * d * d * d;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    out.sd = std::sqrt(m2);
    if (out.sd == 0.0) {
        out.cv = 0.0;
        return out;  // skewness/kurtosis undefined
    }
    if (out.mean != 0.0) out.cv = out.sd / out.mean;  // else undefined, stays absent
    out.skewness = m3 / (m2 * out.sd);
    out.kurtosis_excess = m4 / (m2 * m2) - 3.0;
    return out;
}

double entropy(std::span<const double> counts) {
    if (counts.empty()) throw InputError("entropy: empty counts");
    double total = 0.0;
    for (double c : counts) {
        if (c < 0.0) throw InputError("entropy: negative count");
        total += c;
    }
    if (total <= 0.0) throw InputError("entropy: all-zero counts");
    double h = 0.0;
    for (double c : counts) {
        if (c > 0.0) {
            const double p = c / total;
            h -= p * std::log(p);
        }
    }
    return h;
}

Histogram::Histogram(std::vector<double> edges, std::span<const double> data)
    : edges_(std::move(edges)) {
    if (edges_.size() < 2) throw InputError("histogram: need at least 2 edges");
    for (std::size_t i = 1; i < edges_.size(); ++i) {
        if (edges_[i] <= edges_[i - 1]) {
            throw InputError("histogram: edges must be strictly ascending");
        }
    }
    counts_.assign(edges_.size() - 1, 0.0);
    for (double v : data) {
        if (v < edges_.front() || v > edges_.back()) continue;
        auto it = std::upper_bound(edges_.begin(), edges_.end(), v);
        std::size_t idx = static_cast<std::size_t>(it - edges_.begin());
        idx = idx == 0 ? 0 : idx - 1;
        if (idx >= counts_.size()) idx = counts_.size() - 1;  // v == upper edge
        counts_[idx] += 1.0;
        total_ += 1.0;
    }
}

Histogram Histogram::with_bins(std::span<const double> data, std::size_t bins,
                               double lo, double hi) {
    if (bins == 0) throw InputError("histogram: need at least 1 bin");
    if (!(hi > lo)) {
        // Degenerate range: widen symmetrically so everything lands in one bin.
        const double pad = std::max(1.0, std::fabs(lo)) * 1e-9 + 0.5;
        lo -= pad;
        hi += pad;
    }
    std::vector<double> edges(bins + 1);
    for (std::size_t i = 0; i <= bins; ++i) {
        edges[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(bins);
    }
    edges.back() = hi;
    return Histogram(std::move(edges), data);
}

std::vector<double> Histogram::mass() const {
    std::vector<double> m(counts_.size(), 0.0);
    if (total_ <= 0.0) return m;
    for (std::size_t i = 0; i < counts_.size(); ++i) m[i] = counts_[i] / total_;
    return m;
}

}  // namespace coglab::stats
