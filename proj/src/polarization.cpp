#include "conjopt/polarization.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "conjopt/constraint.hpp"
#include "conjopt/errors.hpp"
#include "conjopt/form.hpp"
#include "conjopt/sampling.hpp"

namespace conjopt {

namespace {

void check_inputs(std::span<const CVector> xs, std::span<const CVector> ys,
                  std::span<const cplx> xi) {
    if (xs.size() != ys.size() || xs.size() != xi.size() || xs.empty())
        throw DimensionError("need d matching x, y vectors and d phases");
    for (std::size_t k = 1; k < xs.size(); ++k)
        if (xs[k].size() != xs[0].size() || ys[k].size() != xs[0].size())
            throw DimensionError("all x^k, y^k must share one dimension");
    if (ys[0].size() != xs[0].size())
        throw DimensionError("all x^k, y^k must share one dimension");
    for (const cplx& p : xi)
        if (std::abs(std::abs(p) - 1.0) > 1e-9)
            throw ParameterError("phases must have unit modulus");
}

double factorial(int d) {
    double f = 1.0;
    for (int k = 2; k <= d; ++k) f *= k;
    return f;
}

std::vector<CVector> stack_pairs(std::span<const CVector> xs, std::span<const CVector> ys) {
    std::vector<CVector> zs;
    zs.reserve(xs.size());
    for (std::size_t k = 0; k < xs.size(); ++k) {
        CVector z;
        z.reserve(xs[k].size() + ys[k].size());
        z.insert(z.end(), xs[k].begin(), xs[k].end());
        z.insert(z.end(), ys[k].begin(), ys[k].end());
        zs.push_back(std::move(z));
    }
    return zs;
}

} // namespace

CVector build_u(std::span<const CVector> xs, std::span<const CVector> ys,
                std::span<const cplx> xi) {
    CVector v = build_v(xs, ys, xi);
    const double inv = 1.0 / (2.0 * static_cast<double>(xs.size()));
    for (cplx& z : v) z *= inv;
    return v;
}

CVector build_v(std::span<const CVector> xs, std::span<const CVector> ys,
                std::span<const cplx> xi) {
    check_inputs(xs, ys, xi);
    const std::size_t n = xs[0].size();
    CVector v(n, cplx(0.0, 0.0));
    for (std::size_t k = 0; k < xs.size(); ++k) {
        const cplx cxi = std::conj(xi[k]);
        for (std::size_t i = 0; i < n; ++i)
            v[i] += cxi * std::conj(xs[k][i]) + xi[k] * ys[k][i];
    }
    return v;
}

double polarization_residual(const CTensor& G, std::span<const CVector> xs,
                             std::span<const CVector> ys, int m) {
    if (!is_finite_order(m)) throw ParameterError("exact enumeration needs finite m >= 3");
    const int d = static_cast<int>(xs.size());
    if (d < 1) throw DimensionError("degree must be at least 1");
    if (static_cast<double>(d) * std::log(static_cast<double>(m)) > 25.0)
        throw EnumerationTooLarge("m^d exceeds the enumeration guard");

    const auto& table = roots_table(m);
    const std::size_t n = xs[0].size();

    long long tuples = 1;
    for (int k = 0; k < d; ++k) tuples *= m;

    std::vector<cplx> xi(static_cast<std::size_t>(d));
    CVector v(n);
    cplx acc(0.0, 0.0);
    for (long long t = 0; t < tuples; ++t) {
        long long rem = t;
        cplx prod_conj(1.0, 0.0);
        for (int k = 0; k < d; ++k) {
            xi[static_cast<std::size_t>(k)] = table[static_cast<std::size_t>(rem % m)];
            rem /= m;
            prod_conj *= std::conj(xi[static_cast<std::size_t>(k)]);
        }
        std::fill(v.begin(), v.end(), cplx(0.0, 0.0));
        for (int k = 0; k < d; ++k) {
            const cplx p = xi[static_cast<std::size_t>(k)];
            const cplx cp = std::conj(p);
            for (std::size_t i = 0; i < n; ++i)
                v[i] += cp * std::conj(xs[k][i]) + p * ys[k][i];
        }
        acc += prod_conj * eval_conjugate_tensor(G, v);
    }
    const cplx lhs = acc / static_cast<double>(tuples);

    std::vector<CVector> zs = stack_pairs(xs, ys);
    const cplx rhs = factorial(d) * eval_multilinear(G, zs);
    return std::abs(lhs - rhs) / (1.0 + std::abs(rhs));
}

double polarization_sample(const CTensor& G, std::span<const CVector> xs,
                           std::span<const CVector> ys, int m, long long samples,
                           RandomSource& rng) {
    validate_root_order(m);
    if (samples < 10000) throw ParameterError("need at least 10^4 samples");
    const int d = static_cast<int>(xs.size());
    const std::size_t n = xs[0].size();
    const bool finite = is_finite_order(m);
    const std::vector<cplx>* table = finite ? &roots_table(m) : nullptr;

    std::vector<CVector> zs = stack_pairs(xs, ys);
    const cplx rhs = factorial(d) * eval_multilinear(G, zs);

    cplx mean(0.0, 0.0);
    double sq = 0.0;
    CVector v(n);
    std::vector<cplx> xi(static_cast<std::size_t>(d));
    for (long long s = 0; s < samples; ++s) {
        cplx prod_conj(1.0, 0.0);
        for (int k = 0; k < d; ++k) {
            cplx p;
            if (finite) {
                p = (*table)[rng.next_index(static_cast<std::uint64_t>(m))];
            } else {
                double t = 2.0 * M_PI * rng.next_double();
                p = cplx(std::cos(t), std::sin(t));
            }
            xi[static_cast<std::size_t>(k)] = p;
            prod_conj *= std::conj(p);
        }
        std::fill(v.begin(), v.end(), cplx(0.0, 0.0));
        for (int k = 0; k < d; ++k) {
            const cplx p = xi[static_cast<std::size_t>(k)];
            const cplx cp = std::conj(p);
            for (std::size_t i = 0; i < n; ++i)
                v[i] += cp * std::conj(xs[k][i]) + p * ys[k][i];
        }
        cplx z = prod_conj * eval_conjugate_tensor(G, v);
        mean += z;
        sq += std::norm(z);
    }
    mean /= static_cast<double>(samples);
    const double var = std::max(0.0, sq / static_cast<double>(samples) - std::norm(mean));
    const double stderr_mean = std::sqrt(var / static_cast<double>(samples));
    return std::abs(mean - rhs) / std::max(stderr_mean, 1e-300);
}

} // namespace conjopt
