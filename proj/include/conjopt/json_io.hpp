#ifndef CONJOPT_JSON_IO_HPP
#define CONJOPT_JSON_IO_HPP

#include <string>

#include <json.hpp>

#include "conjopt/conjugate_solvers.hpp"
#include "conjopt/form.hpp"
#include "conjopt/multilinear.hpp"
#include "conjopt/oracle.hpp"
#include "conjopt/sampling.hpp"
#include "conjopt/tensor.hpp"

namespace conjopt {

// Key-order-preserving JSON so serialized payloads are byte-stable.
using json = nlohmann::ordered_json;

// {"dims":[...], "entries":[{"idx":[i1,...,id],"re":f,"im":f}, ...]}
// Unspecified entries are zero; a duplicate idx is an error.
CTensor tensor_from_json(const json& j);
json tensor_to_json(const CTensor& t);

// {"n":int,"d":int,"terms":[{"conj":[...],"plain":[...],"re":f,"im":f}]}
ConjugateForm form_from_json(const json& j);
json form_to_json(const ConjugateForm& g);

json cvector_to_json(const CVector& v);
CVector cvector_from_json(const json& j);

// Reports serialize without wall-clock fields: payloads must be byte-identical
// for a fixed seed regardless of thread count, so elapsed time goes to logs
// (and the bench CSV column), never into these payloads.
json report_to_json(const SolveReport& r);
json report_to_json(const GSolveReport& r);
json report_to_json(const TailBoundReport& r);
json oracle_to_json(const OracleResult& r);

json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const json& j);

} // namespace conjopt

#endif
