#include "schmidt/io.hpp"

#include <fstream>
#include <sstream>

namespace schmidt::io {

namespace {

const Json& field(const Json& j, const std::string& name, const std::string& ctx) {
  if (!j.is_object()) throw FormatError(ctx.empty() ? "<root>" : ctx, "expected a JSON object");
  auto it = j.find(name);
  if (it == j.end()) throw FormatError(ctx + name, "missing");
  return *it;
}

int positive_int(const Json& j, const std::string& name, const std::string& ctx = "") {
  const Json& v = field(j, name, ctx);
  if (!v.is_number_integer() || v.get<long long>() < 1 || v.get<long long>() > (1 << 20)) {
    throw FormatError(ctx + name, "expected a positive integer");
  }
  return static_cast<int>(v.get<long long>());
}

double number(const Json& v, const std::string& name) {
  if (!v.is_number()) throw FormatError(name, "expected a number");
  return v.get<double>();
}

// rows x cols nested array of numbers.
Eigen::MatrixXd real_grid(const Json& j, const std::string& name, int rows, int cols, const std::string& ctx) {
  const Json& g = field(j, name, ctx);
  const std::string where = ctx + name;
  if (!g.is_array() || static_cast<int>(g.size()) != rows) {
    throw FormatError(where, "expected an array of " + std::to_string(rows) + " rows");
  }
  Eigen::MatrixXd out(rows, cols);
  for (int i = 0; i < rows; ++i) {
    const Json& row = g[i];
    const std::string rname = where + "[" + std::to_string(i) + "]";
    if (!row.is_array() || static_cast<int>(row.size()) != cols) {
      throw FormatError(rname, "expected " + std::to_string(cols) + " entries");
    }
    for (int c = 0; c < cols; ++c) out(i, c) = number(row[c], rname + "[" + std::to_string(c) + "]");
  }
  return out;
}

Eigen::VectorXd real_list(const Json& j, const std::string& name, int len, const std::string& ctx) {
  const Json& g = field(j, name, ctx);
  const std::string where = ctx + name;
  if (!g.is_array() || static_cast<int>(g.size()) != len) {
    throw FormatError(where, "expected " + std::to_string(len) + " entries");
  }
  Eigen::VectorXd out(len);
  for (int i = 0; i < len; ++i) out(i) = number(g[i], where + "[" + std::to_string(i) + "]");
  return out;
}

ComplexMatrix matrix_at(const Json& j, const std::string& ctx) {
  const int rows = positive_int(j, "rows", ctx);
  const int cols = positive_int(j, "cols", ctx);
  const Eigen::MatrixXd re = real_grid(j, "re", rows, cols, ctx);
  const Eigen::MatrixXd im = real_grid(j, "im", rows, cols, ctx);
  ComplexMatrix out(rows, cols);
  out.real() = re;
  out.imag() = im;
  return out;
}

ComplexVector vector_at(const Json& j, const std::string& ctx, Dims* dims) {
  const int m = positive_int(j, "m", ctx);
  const int n = positive_int(j, "n", ctx);
  const Eigen::VectorXd re = real_list(j, "re", m * n, ctx);
  const Eigen::VectorXd im = real_list(j, "im", m * n, ctx);
  ComplexVector out(m * n);
  out.real() = re;
  out.imag() = im;
  if (dims) *dims = Dims{m, n};
  return out;
}

PureState state_at(const Json& j, const std::string& ctx) {
  Dims d;
  const ComplexVector v = vector_at(j, ctx, &d);
  const double norm = v.norm();
  if (std::abs(norm - 1.0) > 1e-9) {
    throw FormatError(ctx + "re", "state is not normalized (norm " + std::to_string(norm) + ")");
  }
  return PureState(v / norm, d);
}

Json grid(const Eigen::MatrixXd& x) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < x.cols(); ++c) row.push_back(x(i, c));
    out.push_back(std::move(row));
  }
  return out;
}

Json list(const Eigen::VectorXd& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

}  // namespace

ComplexMatrix matrix_from_json(const Json& j) { return matrix_at(j, ""); }

BipartiteOperator operator_from_json(const Json& j) {
  ComplexMatrix mat = matrix_from_json(j);
  // Map files carry their split as in_dim/out_dim.
  const bool has_mn = j.contains("m") || j.contains("n");
  const int m = has_mn || !j.contains("in_dim") ? positive_int(j, "m") : positive_int(j, "in_dim");
  const int n = has_mn || !j.contains("out_dim") ? positive_int(j, "n") : positive_int(j, "out_dim");
  if (mat.rows() != mat.cols()) throw FormatError("cols", "operator matrix must be square");
  if (static_cast<long long>(m) * n != mat.rows()) {
    throw FormatError("m", "m*n = " + std::to_string(m * n) + " does not match rows = " + std::to_string(mat.rows()));
  }
  return {std::move(mat), Dims{m, n}};
}

MapRepr map_from_json(const Json& j) {
  ComplexMatrix mat = matrix_from_json(j);
  const int r = positive_int(j, "in_dim");
  const int n = positive_int(j, "out_dim");
  if (mat.rows() != mat.cols()) throw FormatError("cols", "Choi matrix must be square");
  if (static_cast<long long>(r) * n != mat.rows()) {
    throw FormatError("in_dim", "in_dim*out_dim = " + std::to_string(r * n) +
                                    " does not match rows = " + std::to_string(mat.rows()));
  }
  if (j.contains("m") && positive_int(j, "m") != r) throw FormatError("m", "disagrees with in_dim");
  if (j.contains("n") && positive_int(j, "n") != n) throw FormatError("n", "disagrees with out_dim");
  return MapRepr(BipartiteOperator(std::move(mat), Dims{r, n}));
}

ComplexVector vector_from_json(const Json& j, Dims* dims) { return vector_at(j, "", dims); }

PureState state_from_json(const Json& j) { return state_at(j, ""); }

SchmidtEnsemble ensemble_from_json(const Json& j) {
  SchmidtEnsemble ens;
  ens.k = positive_int(j, "k");
  const Json& terms = field(j, "terms", "");
  if (!terms.is_array() || terms.empty()) throw FormatError("terms", "expected a nonempty array");
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string ctx = "terms[" + std::to_string(i) + "].";
    const double w = number(field(terms[i], "weight", ctx), ctx + "weight");
    ens.terms.push_back({w, state_at(field(terms[i], "state", ctx), ctx + "state.")});
  }
  try {
    ens.validate();
  } catch (const std::invalid_argument& e) {
    throw FormatError("terms", e.what());
  }
  return ens;
}

Json to_json(const ComplexMatrix& x) {
  Json out;
  out["rows"] = x.rows();
  out["cols"] = x.cols();
  out["re"] = grid(x.real());
  out["im"] = grid(x.imag());
  return out;
}

Json to_json(const BipartiteOperator& x) {
  Json out = to_json(x.matrix());
  out["m"] = x.dims().m;
  out["n"] = x.dims().n;
  return out;
}

Json to_json(const MapRepr& phi) {
  Json out = to_json(phi.choi().matrix());
  out["in_dim"] = phi.in_dim();
  out["out_dim"] = phi.out_dim();
  return out;
}

Json to_json(const ComplexVector& v, Dims dims) {
  Json out;
  out["m"] = dims.m;
  out["n"] = dims.n;
  out["re"] = list(v.real());
  out["im"] = list(v.imag());
  return out;
}

Json to_json(const PureState& v) { return to_json(v.amplitudes(), v.dims()); }

Json to_json(const SchmidtEnsemble& ens) {
  Json out;
  out["k"] = ens.k;
  Json terms = Json::array();
  for (const auto& t : ens.terms) {
    Json term;
    term["weight"] = t.weight;
    term["state"] = to_json(t.state);
    terms.push_back(std::move(term));
  }
  out["terms"] = std::move(terms);
  return out;
}

Json load_json(const std::string& path, std::string* raw) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("<file>", "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) throw FormatError("<file>", path + " is not valid JSON");
  if (raw) *raw = std::move(text);
  return j;
}

}  // namespace schmidt::io
