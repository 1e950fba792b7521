// JSON file formats shared by the library and CLI, with a deterministic
// serializer (shortest round-trip doubles, lowercase exponent, "-0" -> "0").
//
// Formats:
//   matrix    {"rows": R, "cols": C, "data": [[re, im], ...]}   row-major
//   state     matrix form, or {"kind": "pure", "dim": N, "vec": [[re, im], ...]}
//   channel   {"dim": N, "ops": [matrix, ...]}
//   choi      {"dim": N, "choi": matrix}
//   dilation  {"system_dim": N, "ancilla_dim": n, "unitary": matrix}
//   controls  {"dim": N, "generators": [{"label": str, "channel": channel}, ...]}
#ifndef KRAUS_IO_HPP
#define KRAUS_IO_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "kraus/channel.hpp"
#include "kraus/density.hpp"
#include "kraus/reachability.hpp"

namespace kraus::io {

using Json = nlohmann::ordered_json;

// shortest round-trip decimal, lowercase exponent, "-0" normalized to "0"
std::string format_double(double value);

// Deterministic writer: 2-space indent, arrays of scalars inline, numbers via
// format_double. Output ends with a newline.
std::string serialize(const Json& doc);

Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);

Json state_to_json(const DensityMatrix& rho);
Json pure_state_to_json(const PureState& psi);
DensityMatrix state_from_json(const Json& j, const Tolerances& tol = {});

Json channel_to_json(const KrausMap& phi);
KrausMap channel_from_json(const Json& j, const Tolerances& tol = {});
// parse without the trace-preservation check (verification path)
std::vector<ComplexMatrix> channel_ops_from_json(const Json& j);

Json choi_to_json(const ChoiMatrix& c);
ChoiMatrix choi_from_json(const Json& j, const Tolerances& tol = {});

Json dilation_to_json(const Dilation& d);
Dilation dilation_from_json(const Json& j, const Tolerances& tol = {});

Json control_set_to_json(const ControlSet& cs);
ControlSet control_set_from_json(const Json& j, const Tolerances& tol = {});

Json report_to_json(const ReachabilityReport& r);

// Throws ParseError on missing files or invalid JSON.
Json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& doc);

} // namespace kraus::io

#endif
