#include "conjopt/sampling.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "conjopt/errors.hpp"
#include "conjopt/parallel.hpp"

namespace conjopt {

namespace {

// Worst case of the Berry-Esseen constant range (0.4097, 0.56).
constexpr double kBerryEsseenC0 = 0.56;

constexpr long long kMinTailSamples = 10000;

void validate_delta(double delta) {
    if (!(delta > 0.0) || !(delta < 1.0 / 16.0))
        throw ParameterError("delta must lie in the open interval (0, 1/16)");
}

// Smallest L >= lo with pred(L) true, assuming pred is monotone (false then
// true) on [lo, inf). Bisection on the ln n axis.
template <typename Pred>
double monotone_threshold(double lo, Pred pred) {
    if (pred(lo)) return lo;
    double hi = std::max(1.0, lo * 2.0);
    while (!pred(hi)) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e12) return hi; // pathological; callers treat as huge
    }
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (pred(mid))
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

} // namespace

CVector sample_roots(int m, int n, RandomSource& rng) {
    if (m < 3) throw ConstraintError("root order must be >= 3");
    if (n < 1) throw ConstraintError("dimension must be positive");
    const auto& table = roots_table(m);
    CVector x(static_cast<std::size_t>(n));
    for (auto& z : x) z = table[rng.next_index(static_cast<std::uint64_t>(m))];
    return x;
}

CVector sample_circle(int n, RandomSource& rng) {
    CVector x(static_cast<std::size_t>(n));
    for (auto& z : x) {
        double t = 2.0 * M_PI * rng.next_double();
        z = cplx(std::cos(t), std::sin(t));
    }
    return x;
}

CVector sample_sphere(int n, RandomSource& rng) {
    if (n < 1) throw ConstraintError("dimension must be positive");
    CVector x(static_cast<std::size_t>(n));
    while (true) {
        for (auto& z : x) z = rng.next_complex_gaussian();
        double r = norm2(x);
        if (r > 1e-300) {
            for (auto& z : x) z /= r;
            return x;
        }
    }
}

Moments moments_formula(const CVector& a, int m) {
    validate_root_order(m);
    double s2 = 0.0, s4 = 0.0, quart = 0.0;
    for (const cplx& ai : a) {
        double na = std::norm(ai);
        s2 += na;
        s4 += na * na;
        quart += 2.0 * std::real(ai * ai * ai * ai); // a^4 + conj(a)^4
    }
    // sum_{i<j} |a_i|^2 |a_j|^2 = ((sum |a_i|^2)^2 - sum |a_i|^4) / 2
    double cross = (s2 * s2 - s4) / 2.0;
    double e4 = 0.375 * s4 + 1.5 * cross;
    if (m == 4) e4 += quart / 16.0;
    return Moments{0.0, 0.5 * s2, e4};
}

int c2(int m) {
    if (m == kUnitCircleOrder) return 2;
    if (m < 3) throw ConstraintError("root order must be >= 3");
    for (int k = 2; k * k <= m; ++k)
        if (m % k == 0) return k;
    return m;
}

double n1_log(double delta) {
    validate_delta(delta);
    const double gap = 0.5 - 8.0 * delta; // > 0 on the open interval
    auto value = [&](double L) { return 8.0 * delta * L * std::exp(-gap * L); };
    const double peak = 1.0 / gap;
    if (value(peak) <= 0.5) return 0.0; // holds for every n >= 1
    return monotone_threshold(peak, [&](double L) { return value(L) <= 0.5; });
}

double n2_log(double delta) {
    validate_delta(delta);
    auto cond_a = [&](double L) {
        double u = std::sqrt(8.0 * delta * L);
        return (u + 1.0) * (u + 1.0) / 2.0 <= 5.0 * delta * L;
    };
    // 1/(sqrt(2 pi) n^{5d}) - 8 sqrt(2) c0 / n^{8d} >= 1/(3 n^{5d}),
    // rearranged by n^{5d} to avoid underflow at large n.
    const double margin = 1.0 / std::sqrt(2.0 * M_PI) - 1.0 / 3.0;
    auto cond_b = [&](double L) {
        return 8.0 * std::sqrt(2.0) * kBerryEsseenC0 * std::exp(-3.0 * delta * L) <= margin;
    };
    double la = monotone_threshold(0.0, cond_a);
    double lb = monotone_threshold(0.0, cond_b);
    return std::max(la, lb);
}

double c1_log(double delta) {
    double l0 = std::max(n1_log(delta), n2_log(delta));
    double n0 = std::exp(l0);
    if (!std::isfinite(n0)) return -std::numeric_limits<double>::infinity();
    return -std::log(36.0) - n0 * std::log(5.0);
}

namespace {

// Shared tail-probability estimator: counts per-substream events, then sums
// integer counts, so the result is independent of thread partitioning.
double estimate_tail(long long samples, int threads, const RandomSource& rng,
                     const std::function<bool(RandomSource&)>& event) {
    const std::size_t blocks = 256;
    std::vector<long long> counts(blocks, 0);
    const long long per = (samples + static_cast<long long>(blocks) - 1) /
                          static_cast<long long>(blocks);
    parallel_for(blocks, threads, [&](std::size_t b) {
        long long lo = static_cast<long long>(b) * per;
        long long hi = std::min(samples, lo + per);
        long long c = 0;
        for (long long k = lo; k < hi; ++k) {
            RandomSource sub = rng.substream(static_cast<std::uint64_t>(k));
            if (event(sub)) ++c;
        }
        counts[b] = c;
    });
    long long total = 0;
    for (long long c : counts) total += c;
    return static_cast<double>(total) / static_cast<double>(samples);
}

} // namespace

TailBoundReport tail_bound_roots(const CVector& a, int m, double delta,
                                 long long samples, RandomSource& rng, int threads) {
    validate_delta(delta);
    validate_root_order(m);
    if (samples < kMinTailSamples)
        throw ParameterError("tail bound estimation needs at least 10^4 samples");
    const int n = static_cast<int>(a.size());
    if (n < 1) throw ParameterError("coefficient vector must be nonempty");

    const double threshold = std::sqrt(delta * std::log(static_cast<double>(n)) / n) * norm1(a);
    const bool finite = is_finite_order(m);
    const std::vector<cplx>* table = finite ? &roots_table(m) : nullptr;

    auto event = [&](RandomSource& sub) {
        double re = 0.0;
        if (finite) {
            for (int i = 0; i < n; ++i) {
                const cplx& xi = (*table)[sub.next_index(static_cast<std::uint64_t>(m))];
                re += a[static_cast<std::size_t>(i)].real() * xi.real() -
                      a[static_cast<std::size_t>(i)].imag() * xi.imag();
            }
        } else {
            for (int i = 0; i < n; ++i) {
                double t = 2.0 * M_PI * sub.next_double();
                re += a[static_cast<std::size_t>(i)].real() * std::cos(t) -
                      a[static_cast<std::size_t>(i)].imag() * std::sin(t);
            }
        }
        return re >= threshold;
    };

    TailBoundReport rep;
    rep.samples = samples;
    rep.threshold = threshold;
    rep.empirical_prob = estimate_tail(samples, threads, rng, event);
    rep.theoretical_bound_log = c1_log(delta) - std::log(static_cast<double>(c2(m))) -
                                5.0 * delta * std::log(static_cast<double>(n));
    double sigma = std::sqrt(std::max(0.0, rep.empirical_prob * (1.0 - rep.empirical_prob) /
                                               static_cast<double>(samples)));
    rep.violation = rep.empirical_prob + 3.0 * sigma < std::exp(rep.theoretical_bound_log);
    rep.bound_has_unknown_constant = false;
    return rep;
}

TailBoundReport tail_bound_sphere(const CVector& a, double gamma,
                                  long long samples, RandomSource& rng, int threads) {
    const int n = static_cast<int>(a.size());
    if (n < 1) throw ParameterError("coefficient vector must be nonempty");
    const double ln_n = std::log(static_cast<double>(n));
    if (!(gamma > 0.0) || !(gamma * ln_n < static_cast<double>(n)))
        throw ParameterError("need gamma > 0 and gamma ln n < n");
    if (samples < kMinTailSamples)
        throw ParameterError("tail bound estimation needs at least 10^4 samples");

    const double threshold = std::sqrt(gamma * ln_n / n) * norm2(a);

    auto event = [&](RandomSource& sub) {
        CVector xi = sample_sphere(n, sub);
        double re = 0.0;
        for (int i = 0; i < n; ++i)
            re += a[static_cast<std::size_t>(i)].real() * xi[static_cast<std::size_t>(i)].real() -
                  a[static_cast<std::size_t>(i)].imag() * xi[static_cast<std::size_t>(i)].imag();
        return re >= threshold;
    };

    TailBoundReport rep;
    rep.samples = samples;
    rep.threshold = threshold;
    rep.empirical_prob = estimate_tail(samples, threads, rng, event);
    // Shape only: the multiplicative constant c3(gamma) is implicit.
    rep.theoretical_bound_log = n >= 2 ? -2.0 * gamma * ln_n - 0.5 * std::log(ln_n) : 0.0;
    rep.bound_has_unknown_constant = true;
    rep.violation = false;
    return rep;
}

} // namespace conjopt
