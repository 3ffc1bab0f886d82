#include "conjopt/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "conjopt/errors.hpp"
#include "conjopt/parallel.hpp"
#include "conjopt/sampling.hpp"

namespace conjopt {

namespace {

void decode_tuple(long long t, int m, const std::vector<cplx>& table, CVector& x) {
    for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] = table[static_cast<std::size_t>(t % m)];
        t /= m;
    }
}

} // namespace

OracleResult brute_force_form_roots(const ConjugateForm& g, int m, long long guard) {
    if (m < 3) throw ConstraintError("root order must be >= 3");
    const int n = g.n();
    double points = std::pow(static_cast<double>(m), n);
    if (points > static_cast<double>(guard))
        throw EnumerationTooLarge("m^n exceeds the enumeration guard");
    const long long count = static_cast<long long>(points + 0.5);
    const auto& table = roots_table(m);
    CompiledForm cf(g);

    CVector x(static_cast<std::size_t>(n));
    double vmax = -std::numeric_limits<double>::infinity();
    double vmin = std::numeric_limits<double>::infinity();
    long long tmax = 0, tmin = 0;
    for (long long t = 0; t < count; ++t) {
        decode_tuple(t, m, table, x);
        double v = cf.eval(x);
        if (v > vmax) {
            vmax = v;
            tmax = t;
        }
        if (v < vmin) {
            vmin = v;
            tmin = t;
        }
    }
    OracleResult res;
    res.v_max = vmax;
    res.v_min = vmin;
    res.exact = true;
    res.argmax.resize(1, CVector(static_cast<std::size_t>(n)));
    res.argmin.resize(1, CVector(static_cast<std::size_t>(n)));
    decode_tuple(tmax, m, table, res.argmax[0]);
    decode_tuple(tmin, m, table, res.argmin[0]);
    return res;
}

OracleResult brute_force_multilinear_roots(const CTensor& F, int m, long long guard) {
    if (m < 3) throw ConstraintError("root order must be >= 3");
    const int d = F.order();
    if (d < 1) throw ShapeError("tensor must have at least one slot");
    const auto& dims = F.dims();
    long long sum_dims = 0;
    for (int nk : dims) sum_dims += nk;
    if (static_cast<double>(sum_dims) * std::log(static_cast<double>(m)) >
        std::log(static_cast<double>(guard)))
        throw EnumerationTooLarge("m^{sum n_k} exceeds the enumeration guard");

    const auto& table = roots_table(m);
    long long prefix_count = 1;
    for (int k = 0; k + 1 < d; ++k)
        for (int j = 0; j < dims[static_cast<std::size_t>(k)]; ++j) prefix_count *= m;

    const int n_last = dims[static_cast<std::size_t>(d - 1)];

    std::vector<CVector> args(static_cast<std::size_t>(d));
    for (int k = 0; k < d; ++k)
        args[static_cast<std::size_t>(k)] =
            CVector(static_cast<std::size_t>(dims[static_cast<std::size_t>(k)]));

    double vmax = -std::numeric_limits<double>::infinity();
    double vmin = std::numeric_limits<double>::infinity();
    long long tmax = 0, tmin = 0;

    auto fill_prefix = [&](long long t) {
        for (int k = 0; k + 1 < d; ++k) {
            auto& xk = args[static_cast<std::size_t>(k)];
            for (auto& z : xk) {
                z = table[static_cast<std::size_t>(t % m)];
                t /= m;
            }
        }
    };

    for (long long t = 0; t < prefix_count; ++t) {
        fill_prefix(t);
        CTensor w = contract_prefix(
            F, std::span<const CVector>(args.data(), static_cast<std::size_t>(d - 1)));
        double up = 0.0, down = 0.0;
        for (int j = 0; j < n_last; ++j) {
            const cplx wj = w.entries()[static_cast<std::size_t>(j)];
            double hi = -std::numeric_limits<double>::infinity();
            double lo = std::numeric_limits<double>::infinity();
            for (const cplx& om : table) {
                double r = std::real(wj * om);
                hi = std::max(hi, r);
                lo = std::min(lo, r);
            }
            up += hi;
            down += lo;
        }
        if (up > vmax) {
            vmax = up;
            tmax = t;
        }
        if (down < vmin) {
            vmin = down;
            tmin = t;
        }
    }

    auto finish = [&](long long t, bool maximize) {
        fill_prefix(t);
        CTensor w = contract_prefix(
            F, std::span<const CVector>(args.data(), static_cast<std::size_t>(d - 1)));
        auto& last = args[static_cast<std::size_t>(d - 1)];
        for (int j = 0; j < n_last; ++j) {
            const cplx wj = w.entries()[static_cast<std::size_t>(j)];
            int best = 0;
            double best_val = std::real(wj * table[0]);
            for (int r = 1; r < m; ++r) {
                double v = std::real(wj * table[static_cast<std::size_t>(r)]);
                if (maximize ? v > best_val : v < best_val) {
                    best = r;
                    best_val = v;
                }
            }
            last[static_cast<std::size_t>(j)] = table[static_cast<std::size_t>(best)];
        }
        return args;
    };

    OracleResult res;
    res.v_max = vmax;
    res.v_min = vmin;
    res.exact = true;
    res.argmax = finish(tmax, true);
    res.argmin = finish(tmin, false);
    return res;
}

namespace {

CVector project_feasible(const CVector& x, ConstraintKind kind) {
    CVector out = x;
    if (kind == ConstraintKind::Sphere) {
        double r = norm2(out);
        if (r <= 1e-300) {
            std::fill(out.begin(), out.end(), cplx(0.0, 0.0));
            out[0] = cplx(1.0, 0.0);
        } else {
            for (auto& z : out) z /= r;
        }
    } else {
        for (auto& z : out) {
            double r = std::abs(z);
            z = r <= 1e-300 ? cplx(1.0, 0.0) : z / r;
        }
    }
    return out;
}

CVector random_feasible(int n, ConstraintKind kind, RandomSource& rng) {
    return kind == ConstraintKind::Sphere ? sample_sphere(n, rng) : sample_circle(n, rng);
}

// One projected-gradient run; sign = +1 ascends, -1 descends. Monotone by
// step halving on any non-improving proposal.
double gradient_run(const CompiledForm& cf, ConstraintKind kind, CVector x, double sign,
                    int max_iters, CVector* arg_out) {
    double val = sign * cf.eval(x);
    double step = 0.1;
    for (int it = 0; it < max_iters; ++it) {
        CVector gdir = cf.gradient(x);
        double gn = norm2(gdir);
        if (gn <= 1e-14) break;
        bool moved = false;
        while (step > 1e-12) {
            CVector cand(x.size());
            for (std::size_t i = 0; i < x.size(); ++i)
                cand[i] = x[i] + sign * step * gdir[i] / gn;
            cand = project_feasible(cand, kind);
            double cval = sign * cf.eval(cand);
            if (cval > val + 1e-15 * (1.0 + std::abs(val))) {
                x = std::move(cand);
                val = cval;
                moved = true;
                break;
            }
            step *= 0.5;
        }
        if (!moved) break;
        step = std::min(step * 2.0, 0.5);
    }
    if (arg_out) *arg_out = std::move(x);
    return sign * val;
}

} // namespace

OracleResult multistart_form(const ConjugateForm& g, const ConstraintSet& constraint,
                             int starts, RandomSource& rng, int threads) {
    if (starts < 100) throw ParameterError("multistart reference needs at least 100 starts");
    if (constraint.kind == ConstraintKind::RootsOfUnity)
        throw ParameterError("use brute_force_form_roots for finite root orders");
    if (constraint.n != g.n()) throw DimensionError("constraint dimension mismatch");
    const CompiledForm cf(g);
    const int max_iters = 500;

    struct RunOut {
        double up, down;
        CVector arg_up, arg_down;
    };
    std::vector<RunOut> runs(static_cast<std::size_t>(starts));
    parallel_for(static_cast<std::size_t>(starts), threads, [&](std::size_t s) {
        RandomSource sub = rng.substream(s);
        CVector x0 = random_feasible(g.n(), constraint.kind, sub);
        RunOut out;
        out.up = gradient_run(cf, constraint.kind, x0, +1.0, max_iters, &out.arg_up);
        out.down = gradient_run(cf, constraint.kind, x0, -1.0, max_iters, &out.arg_down);
        runs[s] = std::move(out);
    });

    OracleResult res;
    res.exact = false;
    res.v_max = -std::numeric_limits<double>::infinity();
    res.v_min = std::numeric_limits<double>::infinity();
    for (const RunOut& r : runs) {
        if (r.up > res.v_max) {
            res.v_max = r.up;
            res.argmax = {r.arg_up};
        }
        if (r.down < res.v_min) {
            res.v_min = r.down;
            res.argmin = {r.arg_down};
        }
    }
    return res;
}

OracleResult multistart_multilinear(const CTensor& F, ConstraintKind kind, int starts,
                                    RandomSource& rng, int threads) {
    if (starts < 100) throw ParameterError("multistart reference needs at least 100 starts");
    if (kind == ConstraintKind::RootsOfUnity)
        throw ParameterError("use brute_force_multilinear_roots for finite root orders");
    const int d = F.order();
    const auto& dims = F.dims();

    auto slot_contract = [&](const std::vector<CVector>& args, int slot) {
        std::map<int, CVector> fixed;
        for (int k = 0; k < d; ++k)
            if (k != slot) fixed[k + 1] = args[static_cast<std::size_t>(k)];
        CTensor c = contract(F, fixed);
        return c.entries();
    };

    auto run = [&](std::vector<CVector> args, double sign, std::vector<CVector>* arg_out) {
        double val = sign * std::real(eval_multilinear(F, args));
        for (int sweep = 0; sweep < 200; ++sweep) {
            for (int slot = 0; slot < d; ++slot) {
                std::vector<cplx> c = slot_contract(args, slot);
                auto& xs = args[static_cast<std::size_t>(slot)];
                if (kind == ConstraintKind::Sphere) {
                    double r = 0.0;
                    for (const cplx& z : c) r += std::norm(z);
                    r = std::sqrt(r);
                    if (r <= 1e-300) continue;
                    for (std::size_t i = 0; i < xs.size(); ++i)
                        xs[i] = sign * std::conj(c[i]) / r;
                } else {
                    for (std::size_t i = 0; i < xs.size(); ++i) {
                        double r = std::abs(c[i]);
                        xs[i] = r <= 1e-300 ? cplx(1.0, 0.0) : sign * std::conj(c[i]) / r;
                    }
                }
            }
            double after = sign * std::real(eval_multilinear(F, args));
            if (after <= val + 1e-13 * (1.0 + std::abs(after))) {
                val = after;
                break;
            }
            val = after;
        }
        if (arg_out) *arg_out = std::move(args);
        return sign * val;
    };

    struct RunOut {
        double up, down;
        std::vector<CVector> arg_up, arg_down;
    };
    std::vector<RunOut> runs(static_cast<std::size_t>(starts));
    parallel_for(static_cast<std::size_t>(starts), threads, [&](std::size_t s) {
        RandomSource sub = rng.substream(s);
        std::vector<CVector> start(static_cast<std::size_t>(d));
        for (int k = 0; k < d; ++k)
            start[static_cast<std::size_t>(k)] =
                random_feasible(dims[static_cast<std::size_t>(k)], kind, sub);
        RunOut out;
        // Ascent and descent share the start, so v_max >= v_min holds per start.
        out.up = run(start, +1.0, &out.arg_up);
        out.down = run(start, -1.0, &out.arg_down);
        runs[s] = std::move(out);
    });

    OracleResult res;
    res.exact = false;
    res.v_max = -std::numeric_limits<double>::infinity();
    res.v_min = std::numeric_limits<double>::infinity();
    for (const RunOut& r : runs) {
        if (r.up > res.v_max) {
            res.v_max = r.up;
            res.argmax = r.arg_up;
        }
        if (r.down < res.v_min) {
            res.v_min = r.down;
            res.argmin = r.arg_down;
        }
    }
    return res;
}

} // namespace conjopt
