#include "kraus/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace kraus::io {

namespace {

void expect(bool condition, const std::string& message) {
  if (!condition)
    throw Error(ErrorCode::ParseError, message);
}

double number_from(const Json& j, const std::string& what) {
  expect(j.is_number(), what + " must be a number");
  double v = j.get<double>();
  expect(std::isfinite(v), what + " must be finite");
  return v;
}

Index positive_index(const Json& j, const std::string& what) {
  expect(j.is_number_integer(), what + " must be an integer");
  auto v = j.get<long long>();
  expect(v > 0, what + " must be positive");
  return static_cast<Index>(v);
}

Complex complex_from(const Json& j, const std::string& what) {
  expect(j.is_array() && j.size() == 2, what + " must be a [re, im] pair");
  return Complex(number_from(j[0], what), number_from(j[1], what));
}

Json complex_to_json(const Complex& z) {
  return Json::array({z.real(), z.imag()});
}

bool is_scalar(const Json& j) {
  return !j.is_array() && !j.is_object();
}

void write_value(const Json& v, std::string& out, int indent);

void write_scalar(const Json& v, std::string& out) {
  if (v.is_number_float())
    out += format_double(v.get<double>());
  else
    out += v.dump(); // integers, bools, strings (escaped), null
}

void write_value(const Json& v, std::string& out, int indent) {
  std::string pad(static_cast<size_t>(indent) * 2, ' ');
  std::string inner_pad(static_cast<size_t>(indent + 1) * 2, ' ');

  if (v.is_object()) {
    if (v.empty()) {
      out += "{}";
      return;
    }
    out += "{\n";
    bool first = true;
    for (const auto& [key, value] : v.items()) {
      if (!first)
        out += ",\n";
      first = false;
      out += inner_pad + Json(key).dump() + ": ";
      write_value(value, out, indent + 1);
    }
    out += "\n" + pad + "}";
    return;
  }
  if (v.is_array()) {
    if (v.empty()) {
      out += "[]";
      return;
    }
    bool inline_array = true;
    for (const auto& e : v)
      if (!is_scalar(e)) {
        inline_array = false;
        break;
      }
    if (inline_array) {
      out += "[";
      for (size_t i = 0; i < v.size(); ++i) {
        if (i)
          out += ", ";
        write_scalar(v[i], out);
      }
      out += "]";
      return;
    }
    out += "[\n";
    for (size_t i = 0; i < v.size(); ++i) {
      if (i)
        out += ",\n";
      out += inner_pad;
      write_value(v[i], out, indent + 1);
    }
    out += "\n" + pad + "]";
    return;
  }
  write_scalar(v, out);
}

} // namespace

std::string format_double(double value) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  std::string s(buf, res.ptr);
  if (s == "-0")
    return "0";
  return s;
}

std::string serialize(const Json& doc) {
  std::string out;
  write_value(doc, out, 0);
  out += "\n";
  return out;
}

Json matrix_to_json(const ComplexMatrix& m) {
  Json data = Json::array();
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      data.push_back(complex_to_json(m(i, j)));
  Json doc;
  doc["rows"] = m.rows();
  doc["cols"] = m.cols();
  doc["data"] = std::move(data);
  return doc;
}

ComplexMatrix matrix_from_json(const Json& j) {
  expect(j.is_object(), "matrix must be an object");
  expect(j.contains("rows") && j.contains("cols") && j.contains("data"),
         "matrix needs rows, cols and data");
  Index rows = positive_index(j["rows"], "rows");
  Index cols = positive_index(j["cols"], "cols");
  const Json& data = j["data"];
  expect(data.is_array(), "data must be an array");
  expect(static_cast<Index>(data.size()) == rows * cols,
         "data length does not match rows * cols");
  ComplexMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index k = 0; k < cols; ++k)
      m(i, k) = complex_from(data[static_cast<size_t>(i * cols + k)], "matrix entry");
  return m;
}

Json state_to_json(const DensityMatrix& rho) {
  return matrix_to_json(rho.matrix());
}

Json pure_state_to_json(const PureState& psi) {
  Json vec = Json::array();
  for (Index i = 0; i < psi.dim(); ++i)
    vec.push_back(complex_to_json(psi.vector()(i)));
  Json doc;
  doc["kind"] = "pure";
  doc["dim"] = psi.dim();
  doc["vec"] = std::move(vec);
  return doc;
}

DensityMatrix state_from_json(const Json& j, const Tolerances& tol) {
  expect(j.is_object(), "state must be an object");
  if (j.contains("kind")) {
    expect(j["kind"].is_string() && j["kind"] == "pure",
           "unknown state kind, expected \"pure\"");
    Index dim = positive_index(j["dim"], "dim");
    const Json& vec = j["vec"];
    expect(vec.is_array() && static_cast<Index>(vec.size()) == dim,
           "vec length does not match dim");
    ComplexVector v(dim);
    for (Index i = 0; i < dim; ++i)
      v(i) = complex_from(vec[static_cast<size_t>(i)], "vector entry");
    PureState psi(v, tol);
    return DensityMatrix(psi.projector(), tol);
  }
  ComplexMatrix m = matrix_from_json(j);
  expect(m.rows() == m.cols(), "state matrix must be square");
  return DensityMatrix(m, tol);
}

Json channel_to_json(const KrausMap& phi) {
  Json ops = Json::array();
  for (const auto& k : phi.ops())
    ops.push_back(matrix_to_json(k));
  Json doc;
  doc["dim"] = phi.dim();
  doc["ops"] = std::move(ops);
  return doc;
}

std::vector<ComplexMatrix> channel_ops_from_json(const Json& j) {
  expect(j.is_object(), "channel must be an object");
  expect(j.contains("dim") && j.contains("ops"), "channel needs dim and ops");
  Index dim = positive_index(j["dim"], "dim");
  const Json& ops = j["ops"];
  expect(ops.is_array() && !ops.empty(), "ops must be a nonempty array");
  std::vector<ComplexMatrix> out;
  out.reserve(ops.size());
  for (const auto& op : ops) {
    ComplexMatrix m = matrix_from_json(op);
    expect(m.rows() == dim && m.cols() == dim, "operator dimension does not match dim");
    out.push_back(std::move(m));
  }
  return out;
}

KrausMap channel_from_json(const Json& j, const Tolerances& tol) {
  return KrausMap(channel_ops_from_json(j), tol);
}

Json choi_to_json(const ChoiMatrix& c) {
  Json doc;
  doc["dim"] = c.dim();
  doc["choi"] = matrix_to_json(c.matrix());
  return doc;
}

ChoiMatrix choi_from_json(const Json& j, const Tolerances& tol) {
  expect(j.is_object(), "choi document must be an object");
  expect(j.contains("dim") && j.contains("choi"), "choi document needs dim and choi");
  Index dim = positive_index(j["dim"], "dim");
  ComplexMatrix m = matrix_from_json(j["choi"]);
  expect(m.rows() == dim * dim && m.cols() == dim * dim,
         "choi matrix must be dim^2 x dim^2");
  return ChoiMatrix(dim, m, tol);
}

Json dilation_to_json(const Dilation& d) {
  Json doc;
  doc["system_dim"] = d.system_dim;
  doc["ancilla_dim"] = d.ancilla_dim;
  doc["unitary"] = matrix_to_json(d.unitary);
  return doc;
}

Dilation dilation_from_json(const Json& j, const Tolerances& tol) {
  expect(j.is_object(), "dilation must be an object");
  expect(j.contains("system_dim") && j.contains("ancilla_dim") && j.contains("unitary"),
         "dilation needs system_dim, ancilla_dim and unitary");
  Index n = positive_index(j["system_dim"], "system_dim");
  Index anc = positive_index(j["ancilla_dim"], "ancilla_dim");
  ComplexMatrix u = matrix_from_json(j["unitary"]);
  expect(u.rows() == n * anc && u.cols() == n * anc,
         "unitary must act on the full system x ancilla space");
  double residual = max_dist(u.adjoint() * u, identity(n * anc));
  if (residual > tol.tp)
    throw Error(ErrorCode::NotUnitary, "dilation matrix is not unitary", residual);
  return Dilation{n, anc, std::move(u), 0};
}

Json control_set_to_json(const ControlSet& cs) {
  Json gens = Json::array();
  for (const auto& g : cs.generators()) {
    Json entry;
    entry["label"] = g.label;
    entry["channel"] = channel_to_json(g.channel);
    gens.push_back(std::move(entry));
  }
  Json doc;
  doc["dim"] = cs.dim();
  doc["generators"] = std::move(gens);
  return doc;
}

ControlSet control_set_from_json(const Json& j, const Tolerances& tol) {
  expect(j.is_object(), "control set must be an object");
  expect(j.contains("dim") && j.contains("generators"),
         "control set needs dim and generators");
  Index dim = positive_index(j["dim"], "dim");
  const Json& gens = j["generators"];
  expect(gens.is_array() && !gens.empty(), "generators must be a nonempty array");
  std::vector<LabeledChannel> out;
  out.reserve(gens.size());
  for (const auto& g : gens) {
    expect(g.is_object() && g.contains("label") && g.contains("channel"),
           "each generator needs a label and a channel");
    expect(g["label"].is_string(), "generator label must be a string");
    KrausMap phi = channel_from_json(g["channel"], tol);
    expect(phi.dim() == dim, "generator dimension does not match dim");
    out.push_back(LabeledChannel{g["label"].get<std::string>(), std::move(phi)});
  }
  return ControlSet(std::move(out));
}

Json report_to_json(const ReachabilityReport& r) {
  Json doc;
  doc["reached"] = r.reached;
  doc["witness"] = r.witness;
  doc["depth_explored"] = r.depth_explored;
  doc["frontier_sizes"] = r.frontier_sizes;
  doc["closest_distance"] = r.closest_distance;
  if (r.replay_residual)
    doc["replay_residual"] = *r.replay_residual;
  else
    doc["replay_residual"] = nullptr;
  return doc;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorCode::ParseError, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& doc) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw Error(ErrorCode::ParseError, "cannot open " + path + " for writing");
  out << serialize(doc);
  if (!out)
    throw Error(ErrorCode::ParseError, "failed writing " + path);
}

} // namespace kraus::io
