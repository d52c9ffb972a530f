// io.hpp: JSON state/Hamiltonian files and CSV Wigner grids
#pragma once

#include "dynamics.hpp"
#include "wigner.hpp"

#include "json.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

namespace phasespace::io {

using nlohmann::json;

// Locale-independent text with 17 significant digits.
inline std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

inline double parse_double(const std::string& s, const std::string& where) {
  double v = 0.0;
  const char* b = s.data();
  const char* e = s.data() + s.size();
  while (b < e && (*b == ' ' || *b == '\t')) ++b;
  while (e > b && (e[-1] == ' ' || e[-1] == '\t' || e[-1] == '\r')) --e;
  auto res = std::from_chars(b, e, v);
  if (res.ec != std::errc() || res.ptr != e) throw Error(ErrorKind::Parse, where + ": not a number: '" + s + "'");
  return v;
}

// ----- JSON helpers -----

namespace detail {

inline const json& field(const json& j, const char* name) {
  if (!j.is_object()) throw Error(ErrorKind::Parse, "expected a JSON object");
  auto it = j.find(name);
  if (it == j.end()) throw Error(ErrorKind::Parse, std::string("missing field '") + name + "'");
  return *it;
}

inline Vec vector_field(const json& j, const char* name, Eigen::Index len) {
  const json& a = field(j, name);
  if (!a.is_array() || static_cast<Eigen::Index>(a.size()) != len)
    throw Error(ErrorKind::Parse, std::string("field '") + name + "' must be an array of length " +
                                      std::to_string(len));
  Vec v(len);
  for (Eigen::Index k = 0; k < len; ++k) {
    if (!a[k].is_number()) throw Error(ErrorKind::Parse, std::string("field '") + name + "' has a non-numeric entry");
    v(k) = a[k].get<double>();
  }
  return v;
}

inline Mat matrix_field(const json& j, const char* name, Eigen::Index n) {
  const json& a = field(j, name);
  if (!a.is_array() || static_cast<Eigen::Index>(a.size()) != n)
    throw Error(ErrorKind::Parse, std::string("field '") + name + "' must have " + std::to_string(n) + " rows");
  Mat m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const json& row = a[i];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n)
      throw Error(ErrorKind::Parse, std::string("field '") + name + "' row " + std::to_string(i) + " must have " +
                                        std::to_string(n) + " entries");
    for (Eigen::Index k = 0; k < n; ++k) {
      if (!row[k].is_number())
        throw Error(ErrorKind::Parse, std::string("field '") + name + "' has a non-numeric entry");
      m(i, k) = row[k].get<double>();
    }
  }
  return m;
}

inline int n_modes_field(const json& j) {
  const json& n = field(j, "n_modes");
  if (!n.is_number_integer() || n.get<int>() < 1) throw Error(ErrorKind::Parse, "field 'n_modes' must be >= 1");
  return n.get<int>();
}

inline Ordering ordering_field(const json& j) {
  if (!j.contains("ordering")) return Ordering::Pairwise;
  const json& o = j["ordering"];
  if (!o.is_string()) throw Error(ErrorKind::Parse, "field 'ordering' must be a string");
  std::string s = o.get<std::string>();
  if (s == "qpqp") return Ordering::Pairwise;
  if (s == "qqpp") return Ordering::Blockwise;
  throw Error(ErrorKind::Parse, "field 'ordering' must be \"qpqp\" or \"qqpp\"");
}

inline json vector_json(const Vec& v) {
  json a = json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) a.push_back(v(k));
  return a;
}

inline json matrix_json(const Mat& m) {
  json a = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) a.push_back(vector_json(m.row(i).transpose()));
  return a;
}

inline json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Parse, e.what());
  }
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Parse, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace detail

// ----- state files -----

struct StateFile {
  GaussianState state;
  json metadata = json::object();
};

inline json state_to_json(const GaussianState& st, const json& metadata = json::object()) {
  json j;
  j["n_modes"] = st.n_modes();
  j["ordering"] = to_string(st.ordering());
  j["mean"] = detail::vector_json(st.mean());
  j["cov"] = detail::matrix_json(st.cov());
  j["metadata"] = metadata.is_null() ? json::object() : metadata;
  return j;
}

inline StateFile state_from_json(const json& j) {
  int n = detail::n_modes_field(j);
  Ordering o = detail::ordering_field(j);
  Vec mean = detail::vector_field(j, "mean", 2 * n);
  Mat cov = detail::matrix_field(j, "cov", 2 * n);
  StateFile sf{GaussianState(mean, cov, o)};
  if (j.contains("metadata")) sf.metadata = j["metadata"];
  return sf;
}

inline StateFile parse_state(const std::string& text) { return state_from_json(detail::parse_text(text)); }
inline StateFile read_state_file(const std::string& path) { return parse_state(detail::slurp(path)); }

inline std::string dump_state(const GaussianState& st, const json& metadata = json::object()) {
  return state_to_json(st, metadata).dump(2) + "\n";
}

// ----- Hamiltonian files: {"n_modes", "ordering", "f_bar", "alpha"} -----

inline QuadraticHamiltonian hamiltonian_from_json(const json& j) {
  int n = detail::n_modes_field(j);
  Ordering o = detail::ordering_field(j);
  Mat f = detail::matrix_field(j, "f_bar", 2 * n);
  Vec alpha = j.contains("alpha") ? detail::vector_field(j, "alpha", 2 * n) : Vec::Zero(2 * n);
  return QuadraticHamiltonian::from_matrix(f, alpha, o);
}

inline QuadraticHamiltonian read_hamiltonian_file(const std::string& path) {
  return hamiltonian_from_json(detail::parse_text(detail::slurp(path)));
}

// ----- grid files -----

// "# key=value" preamble, a "q,p,w" header, then one row per node with q varying slowest.
inline void write_grid_csv(std::ostream& out, const WignerGrid& w, const std::map<std::string, std::string>& extra = {}) {
  const auto& g = w.grid;
  out << "# q_min=" << format_double(g.q_min) << "\n# q_max=" << format_double(g.q_max)
      << "\n# p_min=" << format_double(g.p_min) << "\n# p_max=" << format_double(g.p_max) << "\n# n_q=" << g.n_q
      << "\n# n_p=" << g.n_p << "\n# hbar=" << format_double(g.hbar) << "\n";
  for (const auto& [k, v] : extra) out << "# " << k << "=" << v << "\n";
  out << "q,p,w\n";
  for (int i = 0; i < g.n_q; ++i)
    for (int j = 0; j < g.n_p; ++j)
      out << format_double(g.q(i)) << ',' << format_double(g.p(j)) << ',' << format_double(w.values(i, j)) << '\n';
}

struct GridFile {
  WignerGrid wigner;
  std::map<std::string, std::string> preamble;
};

inline GridFile read_grid_csv(std::istream& in) {
  GridFile gf;
  std::string line;
  int line_no = 0;
  bool header = false;
  std::vector<double> values;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(line_no);
    if (!header && line[0] == '#') {
      auto eq = line.find('=');
      if (eq == std::string::npos) throw Error(ErrorKind::Parse, where + ": preamble entry without '='");
      std::string key = line.substr(1, eq - 1);
      key.erase(0, key.find_first_not_of(' '));
      gf.preamble[key] = line.substr(eq + 1);
      continue;
    }
    if (!header) {
      if (line != "q,p,w") throw Error(ErrorKind::Parse, where + ": expected header 'q,p,w'");
      header = true;
      continue;
    }
    auto c1 = line.find(','), c2 = line.find(',', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
      throw Error(ErrorKind::Parse, where + ": expected three comma-separated values");
    values.push_back(parse_double(line.substr(c2 + 1), where));
  }
  if (!header) throw Error(ErrorKind::Parse, "grid file has no 'q,p,w' header");
  auto get = [&](const char* key) -> const std::string& {
    auto it = gf.preamble.find(key);
    if (it == gf.preamble.end()) throw Error(ErrorKind::Parse, std::string("grid preamble lacks '") + key + "'");
    return it->second;
  };
  PhaseSpaceGrid g;
  g.q_min = parse_double(get("q_min"), "q_min");
  g.q_max = parse_double(get("q_max"), "q_max");
  g.p_min = parse_double(get("p_min"), "p_min");
  g.p_max = parse_double(get("p_max"), "p_max");
  g.n_q = static_cast<int>(parse_double(get("n_q"), "n_q"));
  g.n_p = static_cast<int>(parse_double(get("n_p"), "n_p"));
  g.hbar = parse_double(get("hbar"), "hbar");
  g.validate();
  if (values.size() != static_cast<size_t>(g.n_q) * g.n_p)
    throw Error(ErrorKind::Parse, "grid file has " + std::to_string(values.size()) + " rows, expected " +
                                      std::to_string(g.n_q * g.n_p));
  gf.wigner.grid = g;
  gf.wigner.values.resize(g.n_q, g.n_p);
  for (int i = 0; i < g.n_q; ++i)
    for (int j = 0; j < g.n_p; ++j) gf.wigner.values(i, j) = values[static_cast<size_t>(i) * g.n_p + j];
  return gf;
}

}  // namespace phasespace::io
