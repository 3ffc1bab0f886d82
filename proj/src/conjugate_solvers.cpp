#include "conjopt/conjugate_solvers.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "conjopt/constraint.hpp"
#include "conjopt/errors.hpp"
#include "conjopt/polarization.hpp"
#include "conjopt/sampling.hpp"

namespace conjopt {

namespace {

double factorial(int d) {
    double f = 1.0;
    for (int k = 2; k <= d; ++k) f *= k;
    return f;
}

void validate_delta(double delta) {
    if (!(delta > 0.0) || !(delta < 1.0 / 16.0))
        throw ParameterError("delta must lie in (0, 1/16)");
}

double ratio_gm(int m, int n, int d, double delta) {
    return c4(m) * factorial(d) / std::pow(2.0 * d, d) *
           std::pow(delta * std::log(2.0 * n) / (2.0 * n), (d - 2) / 2.0);
}

struct SplitRelaxation {
    std::vector<CVector> xs;
    std::vector<CVector> ys;
    SolveReport report;
};

SplitRelaxation split_solution(SolveReport rep, int n) {
    SplitRelaxation out;
    out.xs.reserve(rep.solution.size());
    out.ys.reserve(rep.solution.size());
    for (const CVector& z : rep.solution) {
        out.xs.emplace_back(z.begin(), z.begin() + n);
        out.ys.emplace_back(z.begin() + n, z.end());
    }
    out.report = std::move(rep);
    return out;
}

bool xi_enumerated(int m, int d, const GSolveOptions& opt) {
    return is_finite_order(m) &&
           std::pow(static_cast<double>(m), d) <= static_cast<double>(opt.xi_enum_guard);
}

// Enumerates xi tuples over Omega_m^d, or samples tuples when m is the
// circle sentinel or m^d exceeds the guard, invoking visit(xi, prod_conj).
void xi_search(int m, int d, const GSolveOptions& opt, RandomSource& rng,
               const std::function<void(const std::vector<cplx>&, cplx)>& visit) {
    std::vector<cplx> xi(static_cast<std::size_t>(d));
    const bool finite = is_finite_order(m);
    if (xi_enumerated(m, d, opt)) {
        const auto& table = roots_table(m);
        long long total = 1;
        for (int k = 0; k < d; ++k) total *= m;
        for (long long t = 0; t < total; ++t) {
            long long rem = t;
            cplx prod(1.0, 0.0);
            for (int k = 0; k < d; ++k) {
                xi[static_cast<std::size_t>(k)] = table[static_cast<std::size_t>(rem % m)];
                rem /= m;
                prod *= std::conj(xi[static_cast<std::size_t>(k)]);
            }
            visit(xi, prod);
        }
        return;
    }
    const long long samples = static_cast<long long>(opt.xi_samples_per_degree) * d;
    for (long long s = 0; s < samples; ++s) {
        cplx prod(1.0, 0.0);
        for (int k = 0; k < d; ++k) {
            cplx p;
            if (finite) {
                const auto& table = roots_table(m);
                p = table[rng.next_index(static_cast<std::uint64_t>(m))];
            } else {
                double t = 2.0 * M_PI * rng.next_double();
                p = cplx(std::cos(t), std::sin(t));
            }
            xi[static_cast<std::size_t>(k)] = p;
            prod *= std::conj(p);
        }
        visit(xi, prod);
    }
}

// Keeps the tuple with the largest |g(u_xi)| seen during a sampled search;
// afterwards its last phase is re-chosen so prod conj(xi_i) collapses to an
// exact sign, which the caller feeds back through its own visit logic.
struct AlignmentTracker {
    double best_abs = -1.0;
    std::vector<cplx> xi;

    void offer(const std::vector<cplx>& cand, double g_value) {
        if (std::abs(g_value) > best_abs) {
            best_abs = std::abs(g_value);
            xi = cand;
        }
    }

    std::vector<cplx> aligned(double sign) const {
        std::vector<cplx> out = xi;
        cplx last(sign, 0.0);
        for (std::size_t k = 0; k + 1 < out.size(); ++k) last *= std::conj(out[k]);
        out.back() = last;
        return out;
    }
};

CVector build_u_inline(std::span<const CVector> xs, std::span<const CVector> ys,
                       const std::vector<cplx>& xi) {
    return build_u(xs, ys, std::span<const cplx>(xi.data(), xi.size()));
}

// Per-coordinate maximization sweep for convex objectives: each coordinate
// is replaced by the best vertex among all m roots (finite m), or, for the
// circle, the best of the two antipodal boundary points through x_i (which
// convexity guarantees do not decrease g) plus a fixed angular scan.
CVector round_convex_up(const ConjugateForm& g, CVector x, int m) {
    CompiledForm cf(g);
    const int n = g.n();
    for (int i = 0; i < n; ++i) {
        if (!in_conv_roots(x[static_cast<std::size_t>(i)], m, 1e-9))
            throw ConvexHullViolation("coordinate " + std::to_string(i + 1) +
                                      " lies outside conv(Omega_m)");
        cplx best_z;
        double best_v = -std::numeric_limits<double>::infinity();
        auto consider = [&](cplx z) {
            x[static_cast<std::size_t>(i)] = z;
            double v = cf.eval(x);
            if (v > best_v) {
                best_v = v;
                best_z = z;
            }
        };
        if (is_finite_order(m)) {
            for (const cplx& w : roots_table(m)) consider(w);
        } else {
            cplx xi = x[static_cast<std::size_t>(i)];
            double theta = std::abs(xi) <= 1e-300 ? 0.0 : std::arg(xi);
            consider(cplx(std::cos(theta), std::sin(theta)));
            consider(-cplx(std::cos(theta), std::sin(theta)));
            const int scan = 64;
            for (int j = 0; j < scan; ++j) {
                double t = 2.0 * M_PI * j / scan;
                consider(cplx(std::cos(t), std::sin(t)));
            }
        }
        x[static_cast<std::size_t>(i)] = best_z;
    }
    return x;
}

} // namespace

CVector round_to_vertices(const ConjugateForm& g, const CVector& x, int m,
                          RoundDirection direction) {
    validate_root_order(m);
    if (!is_square_free(g)) throw NotSquareFree("rounding requires a square-free form");
    if (static_cast<int>(x.size()) != g.n()) throw DimensionError("point dimension mismatch");
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!in_conv_roots(x[i], m, 1e-9))
            throw ConvexHullViolation("coordinate " + std::to_string(i + 1) +
                                      " lies outside conv(Omega_m)");
    const bool up = direction == RoundDirection::Up;
    CVector z = x;
    for (int i = 1; i <= g.n(); ++i) {
        LinearCoeff lc = extract_linear_coefficient(g, z, i);
        cplx pick;
        if (std::abs(lc.p1) == 0.0) {
            pick = cplx(1.0, 0.0); // documented tie rule: root index 0
        } else if (is_finite_order(m)) {
            const auto& table = roots_table(m);
            int best = 0;
            double best_v = std::real(table[0] * lc.p1);
            for (int j = 1; j < m; ++j) {
                double v = std::real(table[static_cast<std::size_t>(j)] * lc.p1);
                if (up ? v > best_v : v < best_v) {
                    best = j;
                    best_v = v;
                }
            }
            pick = table[static_cast<std::size_t>(best)];
        } else {
            cplx dir = std::conj(lc.p1) / std::abs(lc.p1);
            pick = up ? dir : -dir;
        }
        z[static_cast<std::size_t>(i - 1)] = pick;
    }
    return z;
}

double hessian_sample(const ConjugateForm& g, const CVector& x, const CVector& y) {
    if (static_cast<int>(x.size()) != g.n() || static_cast<int>(y.size()) != g.n())
        throw DimensionError("point dimension mismatch");
    const int d = g.degree();
    if (d < 2) return 0.0;
    CTensor G = form_to_tensor(g);
    CVector sy = stack_conj(y);
    CVector sx = stack_conj(x);
    std::vector<CVector> args(static_cast<std::size_t>(d), sx);
    args[0] = sy;
    args[1] = sy;
    cplx v = eval_multilinear(G, args);
    double scale = static_cast<double>(d) * (d - 1);
    if (std::abs(v.imag()) > 1e-9 * (1.0 + std::abs(v.real())))
        throw ImaginaryResidueError("hessian contraction left an imaginary residue");
    return scale * v.real();
}

CTensor build_h_tensor(int n, int d) {
    if (d % 2 != 0) throw OddDegree("h(x) = ||x||^d needs even d");
    if (d == 0) return CTensor::scalar(cplx(1.0, 0.0));
    const int half = d / 2;
    // Multinomial expansion of (sum_i conj(x_i) x_i)^{d/2}: one key (M, M)
    // per multiset M of size d/2.
    std::vector<std::pair<MonomialKey, cplx>> coeffs;
    std::vector<int> mset(static_cast<std::size_t>(half), 1);
    auto multinomial = [&](const std::vector<int>& word) {
        double c = 1.0;
        int pos = 0, run = 0;
        for (std::size_t i = 0; i < word.size(); ++i) {
            ++pos;
            run = (i > 0 && word[i] == word[i - 1]) ? run + 1 : 1;
            c = c * pos / run;
        }
        return c;
    };
    while (true) {
        if (std::is_sorted(mset.begin(), mset.end()))
            coeffs.emplace_back(MonomialKey(mset, mset), cplx(multinomial(mset), 0.0));
        // advance over {1..n}^half
        std::size_t k = mset.size();
        while (k > 0) {
            if (mset[k - 1] < n) {
                ++mset[k - 1];
                break;
            }
            mset[k - 1] = 1;
            --k;
        }
        if (k == 0) break;
    }
    return form_to_tensor(ConjugateForm::from_coefficients(n, d, coeffs));
}

GSolveReport solve_Gm_convex(const ConjugateForm& g, int m, double delta, double epsilon,
                             RandomSource& rng, const GSolveOptions& opt) {
    const auto start_time = std::chrono::steady_clock::now();
    validate_root_order(m);
    validate_delta(delta);
    if (!g.convex_asserted())
        throw ConvexNotAsserted("convex pipeline requires FormFlags.convex_asserted");
    const int d = g.degree();
    if (d < 2) throw ParameterError("conjugate solvers need degree >= 2");
    const int n = g.n();

    BaseCaseStrategy strategy = opt.strategy;
    if (!is_finite_order(m) && strategy.kind == BaseCaseStrategy::Kind::ExactEnumeration)
        strategy = BaseCaseStrategy::alternating(); // no finite table to enumerate

    CTensor G = form_to_tensor(g);
    RandomSource lm_rng = rng.substream(0);
    SplitRelaxation rel = split_solution(
        solve_Lm(G, m, delta, epsilon, opt.trials_override, strategy, lm_rng,
                 opt.threads),
        n);

    CompiledForm cf(g);
    RandomSource xi_rng = rng.substream(1);
    double best_score = -std::numeric_limits<double>::infinity();
    CVector best_u(static_cast<std::size_t>(n), cplx(0.0, 0.0));
    AlignmentTracker tracker;
    auto visit = [&](const std::vector<cplx>& xi, cplx prod) {
        CVector u = build_u_inline(rel.xs, rel.ys, xi);
        double gu = cf.eval(u);
        tracker.offer(xi, gu);
        double score = prod.real() * gu;
        if (score > best_score) {
            best_score = score;
            best_u = u;
        }
    };
    xi_search(m, d, opt, xi_rng, visit);
    if (!xi_enumerated(m, d, opt) && tracker.best_abs >= 0.0) {
        visit(tracker.aligned(1.0), cplx(1.0, 0.0));
        visit(tracker.aligned(-1.0), cplx(-1.0, 0.0));
    }

    CVector z = round_convex_up(g, best_u, m);

    GSolveReport rep;
    rep.solution = std::move(z);
    rep.value = eval_form(g, rep.solution);
    rep.mode = GSolveMode::Convex;
    rep.ratio_formula_value = ratio_gm(m, n, d, delta);
    rep.relative = false;
    rep.ratio_certified = rel.report.ratio_certified;
    rep.trials_run = rel.report.trials_run;
    rep.seed = rng.seed();
    rep.elapsed = std::chrono::steady_clock::now() - start_time;
    return rep;
}

GSolveReport solve_Gm_squarefree(const ConjugateForm& g, int m, double delta,
                                 double epsilon, RandomSource& rng,
                                 const GSolveOptions& opt) {
    const auto start_time = std::chrono::steady_clock::now();
    validate_root_order(m);
    validate_delta(delta);
    if (!is_square_free(g)) throw NotSquareFree("pipeline requires a square-free form");
    const int d = g.degree();
    if (d < 2)
        throw ParameterError("no guarantee is stated for degree-1 forms; rejected");
    const int n = g.n();

    const bool central = m == kUnitCircleOrder || m % 2 == 0;
    const bool absolute = (d % 2 == 1) && central;

    BaseCaseStrategy strategy = opt.strategy;
    if (!is_finite_order(m) && strategy.kind == BaseCaseStrategy::Kind::ExactEnumeration)
        strategy = BaseCaseStrategy::alternating();

    CTensor G = form_to_tensor(g);
    RandomSource lm_rng = rng.substream(0);
    SplitRelaxation rel = split_solution(
        solve_Lm(G, m, delta, epsilon, opt.trials_override, strategy, lm_rng,
                 opt.threads),
        n);

    CompiledForm cf(g);
    RandomSource xi_rng = rng.substream(1);
    GSolveReport rep;
    rep.seed = rng.seed();
    rep.trials_run = rel.report.trials_run;
    rep.ratio_certified = rel.report.ratio_certified;
    rep.ratio_formula_value = ratio_gm(m, n, d, delta);

    if (absolute) {
        double best_score = -std::numeric_limits<double>::infinity();
        CVector best_u(static_cast<std::size_t>(n), cplx(0.0, 0.0));
        AlignmentTracker tracker;
        auto visit = [&](const std::vector<cplx>& xi, cplx prod) {
            CVector u = build_u_inline(rel.xs, rel.ys, xi);
            double gu = cf.eval(u);
            tracker.offer(xi, gu);
            double score = prod.real() * gu;
            if (score > best_score) {
                best_score = score;
                best_u = u;
            }
        };
        xi_search(m, d, opt, xi_rng, visit);
        if (!xi_enumerated(m, d, opt) && tracker.best_abs >= 0.0) {
            visit(tracker.aligned(1.0), cplx(1.0, 0.0));
            visit(tracker.aligned(-1.0), cplx(-1.0, 0.0));
        }
        // Odd degree: g(-u) = -g(u), and -u stays inside the centrally
        // symmetric hull, so the better sign gives |g(u)|.
        CVector neg_u = scale(best_u, cplx(-1.0, 0.0));
        CVector u_eta = cf.eval(best_u) >= cf.eval(neg_u) ? best_u : neg_u;
        rep.solution = round_to_vertices(g, u_eta, m, RoundDirection::Up);
        rep.mode = GSolveMode::SquareFreeAbsolute;
        rep.relative = false;
    } else {
        double best_g = -std::numeric_limits<double>::infinity();
        CVector best_u(static_cast<std::size_t>(n), cplx(0.0, 0.0));
        AlignmentTracker tracker;
        auto visit = [&](const std::vector<cplx>& xi, cplx prod) {
            CVector u = build_u_inline(rel.xs, rel.ys, xi);
            double gu = cf.eval(u);
            tracker.offer(xi, gu);
            if (!(prod.real() > 0.0)) return;
            if (gu > best_g) {
                best_g = gu;
                best_u = u;
            }
        };
        xi_search(m, d, opt, xi_rng, visit);
        if (!xi_enumerated(m, d, opt) && tracker.best_abs >= 0.0)
            visit(tracker.aligned(1.0), cplx(1.0, 0.0));
        // g(0) = 0 comparison point, realized as a rounded feasible vector.
        CVector zero(static_cast<std::size_t>(n), cplx(0.0, 0.0));
        CVector z0 = round_to_vertices(g, zero, m, RoundDirection::Up);
        CVector zb = round_to_vertices(g, best_u, m, RoundDirection::Up);
        rep.solution = eval_form(g, z0) >= eval_form(g, zb) ? z0 : zb;
        rep.mode = GSolveMode::SquareFreeRelative;
        rep.relative = true;
    }
    rep.value = eval_form(g, rep.solution);
    rep.elapsed = std::chrono::steady_clock::now() - start_time;
    return rep;
}

namespace {

// d = 2: g restricted to the unit sphere is a real quadratic form in
// (Re x; Im x); the exact optimum is the top eigenpair.
GSolveReport solve_gs_quadratic(const ConjugateForm& g) {
    const int n = g.n();
    CompiledForm cf(g);
    auto eval_w = [&](const Eigen::VectorXd& w) {
        CVector x(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = cplx(w(i), w(n + i));
        return cf.eval(x);
    };
    const int dim = 2 * n;
    Eigen::MatrixXd M(dim, dim);
    std::vector<double> diag(static_cast<std::size_t>(dim));
    for (int i = 0; i < dim; ++i) {
        Eigen::VectorXd w = Eigen::VectorXd::Zero(dim);
        w(i) = 1.0;
        diag[static_cast<std::size_t>(i)] = eval_w(w);
        M(i, i) = diag[static_cast<std::size_t>(i)];
    }
    for (int i = 0; i < dim; ++i) {
        for (int j = i + 1; j < dim; ++j) {
            Eigen::VectorXd w = Eigen::VectorXd::Zero(dim);
            w(i) = 1.0;
            w(j) = 1.0;
            double v = (eval_w(w) - diag[static_cast<std::size_t>(i)] -
                        diag[static_cast<std::size_t>(j)]) /
                       2.0;
            M(i, j) = v;
            M(j, i) = v;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
    int top = dim - 1; // eigenvalues ascend
    Eigen::VectorXd w = es.eigenvectors().col(top);
    GSolveReport rep;
    rep.solution.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        rep.solution[static_cast<std::size_t>(i)] = cplx(w(i), w(n + i));
    rep.value = eval_form(g, rep.solution);
    rep.mode = GSolveMode::SphereEven;
    rep.ratio_formula_value = 1.0; // exact optimum
    rep.relative = false;
    rep.ratio_certified = true;
    rep.trials_run = 1;
    return rep;
}

} // namespace

GSolveReport solve_GS(const ConjugateForm& g, double gamma, double epsilon,
                      RandomSource& rng, const GSolveOptions& opt) {
    const auto start_time = std::chrono::steady_clock::now();
    const int d = g.degree();
    const int n = g.n();
    if (d < 2) throw ParameterError("conjugate solvers need degree >= 2");
    const double two_n = 2.0 * n;
    if (!(gamma > 0.0) || !(gamma < two_n / std::log(two_n)))
        throw ParameterError("gamma must lie in (0, 2n / ln(2n))");

    if (d == 2) {
        GSolveReport rep = solve_gs_quadratic(g);
        rep.seed = rng.seed();
        rep.elapsed = std::chrono::steady_clock::now() - start_time;
        return rep;
    }

    CompiledForm cf(g);
    const double tau = std::pow(gamma * std::log(two_n) / two_n, (d - 2) / 2.0);
    CTensor G = form_to_tensor(g);

    GSolveReport rep;
    rep.seed = rng.seed();

    if (d % 2 == 1) {
        RandomSource ls_rng = rng.substream(2);
        SplitRelaxation rel = split_solution(
            solve_LS(G, gamma, epsilon, opt.trials_override, ls_rng, opt.threads),
            n);
        RandomSource xi_rng = rng.substream(1);
        double best_abs = -std::numeric_limits<double>::infinity();
        CVector best_z;
        auto consider = [&](const CVector& cand) {
            double v = cf.eval(cand);
            if (std::abs(v) > best_abs) {
                best_abs = std::abs(v);
                best_z = v >= 0.0 ? cand : scale(cand, cplx(-1.0, 0.0));
            }
        };
        xi_search(opt.sphere_xi_order, d, opt, xi_rng,
                  [&](const std::vector<cplx>& xi, cplx) {
                      CVector v = build_v(rel.xs, rel.ys,
                                          std::span<const cplx>(xi.data(), xi.size()));
                      double r = norm2(v);
                      if (r < 1e-14) return;
                      for (auto& c : v) c /= r;
                      consider(v);
                  });
        CVector e1(static_cast<std::size_t>(n), cplx(0.0, 0.0));
        e1[0] = cplx(1.0, 0.0);
        consider(e1); // fallback when every v degenerates
        rep.solution = std::move(best_z);
        rep.mode = GSolveMode::SphereOdd;
        rep.ratio_formula_value =
            factorial(d) / std::pow(std::sqrt(2.0) * d, d) * tau;
        rep.relative = false;
        rep.ratio_certified = rel.report.ratio_certified;
        rep.trials_run = rel.report.trials_run;
    } else {
        // Anchors: one sphere draw plus the first basis vector; the shifted
        // objective uses whichever has the smaller |g|, and both remain
        // candidates at the end.
        RandomSource anchor_rng = rng.substream(3);
        CVector y_draw = sample_sphere(n, anchor_rng);
        CVector e1(static_cast<std::size_t>(n), cplx(0.0, 0.0));
        e1[0] = cplx(1.0, 0.0);
        const double g_draw = cf.eval(y_draw);
        const double g_e1 = cf.eval(e1);
        const double g_anchor = std::abs(g_draw) <= std::abs(g_e1) ? g_draw : g_e1;

        CTensor H = build_h_tensor(n, d);
        CTensor T(G.dims());
        for (std::size_t i = 0; i < T.size(); ++i)
            T.entries()[i] = G.entries()[i] - g_anchor * H.entries()[i];

        RandomSource ls_rng = rng.substream(2);
        SplitRelaxation rel = split_solution(
            solve_LS(T, gamma, epsilon, opt.trials_override, ls_rng, opt.threads),
            n);
        RandomSource xi_rng = rng.substream(1);
        double best_g = -std::numeric_limits<double>::infinity();
        CVector best_z;
        auto consider = [&](const CVector& cand) {
            double v = cf.eval(cand);
            if (v > best_g) {
                best_g = v;
                best_z = cand;
            }
        };
        xi_search(opt.sphere_xi_order, d, opt, xi_rng,
                  [&](const std::vector<cplx>& xi, cplx prod) {
                      if (!(prod.real() > 0.0)) return;
                      CVector v = build_v(rel.xs, rel.ys,
                                          std::span<const cplx>(xi.data(), xi.size()));
                      double r = norm2(v);
                      if (r < 1e-14) return;
                      for (auto& c : v) c /= r;
                      consider(v);
                  });
        consider(y_draw);
        consider(e1);
        rep.solution = std::move(best_z);
        rep.mode = GSolveMode::SphereEven;
        rep.ratio_formula_value = factorial(d) / std::pow(2.0 * d, d) * tau;
        rep.relative = true;
        rep.ratio_certified = rel.report.ratio_certified;
        rep.trials_run = rel.report.trials_run;
    }

    rep.value = eval_form(g, rep.solution);
    rep.elapsed = std::chrono::steady_clock::now() - start_time;
    return rep;
}

} // namespace conjopt
