#include "conjopt/json_io.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "conjopt/errors.hpp"

namespace conjopt {

CTensor tensor_from_json(const json& j) {
    if (!j.contains("dims") || !j["dims"].is_array())
        throw JsonFormatError("tensor JSON needs a dims array");
    std::vector<int> dims = j["dims"].get<std::vector<int>>();
    if (dims.empty()) throw JsonFormatError("tensor needs at least one dimension");
    CTensor t(dims);
    std::set<std::size_t> seen;
    if (j.contains("entries")) {
        for (const auto& e : j["entries"]) {
            std::vector<int> idx = e.at("idx").get<std::vector<int>>();
            std::size_t off = t.offset(std::span<const int>(idx.data(), idx.size()));
            if (!seen.insert(off).second)
                throw JsonFormatError("duplicate idx in tensor JSON");
            t.entries()[off] = cplx(e.value("re", 0.0), e.value("im", 0.0));
        }
    }
    return t;
}

json tensor_to_json(const CTensor& t) {
    json j;
    j["dims"] = t.dims();
    json entries = json::array();
    std::vector<int> idx(static_cast<std::size_t>(t.order()), 1);
    if (t.order() > 0) {
        do {
            cplx v = t.at(std::span<const int>(idx.data(), idx.size()));
            if (v != cplx(0.0, 0.0)) {
                json e;
                e["idx"] = idx;
                e["re"] = v.real();
                e["im"] = v.imag();
                entries.push_back(std::move(e));
            }
        } while (next_index(idx, t.dims()));
    }
    j["entries"] = std::move(entries);
    return j;
}

ConjugateForm form_from_json(const json& j) {
    if (!j.contains("n") || !j.contains("d"))
        throw JsonFormatError("form JSON needs n and d");
    int n = j["n"].get<int>();
    int d = j["d"].get<int>();
    std::vector<std::pair<MonomialKey, cplx>> coeffs;
    if (j.contains("terms")) {
        for (const auto& t : j["terms"]) {
            MonomialKey key(t.value("conj", std::vector<int>{}),
                            t.value("plain", std::vector<int>{}));
            coeffs.emplace_back(std::move(key), cplx(t.value("re", 0.0), t.value("im", 0.0)));
        }
    }
    return ConjugateForm::from_coefficients(n, d, coeffs);
}

json form_to_json(const ConjugateForm& g) {
    json j;
    j["n"] = g.n();
    j["d"] = g.degree();
    json terms = json::array();
    for (const auto& [key, a] : g.coefficients()) {
        json t;
        t["conj"] = key.conj_idx;
        t["plain"] = key.plain_idx;
        t["re"] = a.real();
        t["im"] = a.imag();
        terms.push_back(std::move(t));
    }
    j["terms"] = std::move(terms);
    return j;
}

json cvector_to_json(const CVector& v) {
    json arr = json::array();
    for (const cplx& z : v) {
        json e;
        e["re"] = z.real();
        e["im"] = z.imag();
        arr.push_back(std::move(e));
    }
    return arr;
}

CVector cvector_from_json(const json& j) {
    CVector v;
    for (const auto& e : j) v.emplace_back(e.value("re", 0.0), e.value("im", 0.0));
    return v;
}

json report_to_json(const SolveReport& r) {
    json j;
    j["value"] = r.value;
    j["ratio_formula_value"] = r.ratio_formula_value;
    j["ratio_certified"] = r.ratio_certified;
    j["unit_dim_substituted"] = r.unit_dim_substituted;
    j["trials_run"] = r.trials_run;
    j["seed"] = r.seed;
    j["theory_trials_log"] = r.theory_trials_log;
    json sol = json::array();
    for (const CVector& v : r.solution) sol.push_back(cvector_to_json(v));
    j["solution"] = std::move(sol);
    return j;
}

namespace {

const char* mode_name(GSolveMode m) {
    switch (m) {
        case GSolveMode::Convex: return "convex";
        case GSolveMode::SquareFreeRelative: return "squarefree_relative";
        case GSolveMode::SquareFreeAbsolute: return "squarefree_absolute";
        case GSolveMode::SphereEven: return "sphere_even";
        case GSolveMode::SphereOdd: return "sphere_odd";
    }
    return "unknown";
}

} // namespace

json report_to_json(const GSolveReport& r) {
    json j;
    j["value"] = r.value;
    j["mode"] = mode_name(r.mode);
    j["ratio_formula_value"] = r.ratio_formula_value;
    j["relative"] = r.relative;
    j["ratio_certified"] = r.ratio_certified;
    j["trials_run"] = r.trials_run;
    j["seed"] = r.seed;
    j["solution"] = cvector_to_json(r.solution);
    return j;
}

json report_to_json(const TailBoundReport& r) {
    json j;
    j["empirical_prob"] = r.empirical_prob;
    // exp() of this can underflow to zero; the log always serializes.
    j["theoretical_bound_log"] = std::isfinite(r.theoretical_bound_log)
                                     ? json(r.theoretical_bound_log)
                                     : json("-inf");
    j["samples"] = r.samples;
    j["threshold"] = r.threshold;
    j["violation"] = r.violation;
    j["bound_has_unknown_constant"] = r.bound_has_unknown_constant;
    return j;
}

json oracle_to_json(const OracleResult& r) {
    json j;
    j["v_max"] = r.v_max;
    j["v_min"] = r.v_min;
    j["exact"] = r.exact;
    json amax = json::array(), amin = json::array();
    for (const CVector& v : r.argmax) amax.push_back(cvector_to_json(v));
    for (const CVector& v : r.argmin) amin.push_back(cvector_to_json(v));
    j["argmax"] = std::move(amax);
    j["argmin"] = std::move(amin);
    return j;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw JsonFormatError("cannot open " + path);
    json j;
    in >> j;
    return j;
}

void save_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw JsonFormatError("cannot write " + path);
    out << j.dump(2) << "\n";
}

} // namespace conjopt
