#pragma once

// JSON interchange. Rationals travel as "p/q" strings; integers are also
// accepted on input. Key order in emitted objects is fixed by nlohmann's
// sorted map, so output bytes depend only on the values.

#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "pencillab/ff/fforacle.hpp"
#include "pencillab/verdict.hpp"

namespace pencillab::io {

using json = nlohmann::json;

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(what + ": " + e.what());
  }
}

inline Rat rat_from_json(const json& v) {
  if (v.is_string()) return parse_rat(v.get<std::string>());
  if (v.is_number_integer()) return Rat(Int(v.dump()));
  throw ParseError("expected a rational string, got " + v.dump());
}

inline json rat_to_json(const Rat& r) { return r.get_str(); }

inline Matrix matrix_from_json(const json& v, const std::string& what) {
  if (!v.is_array() || v.empty()) throw ParseError(what + " must be a nonempty array of rows");
  const std::size_t cols = v[0].is_array() ? v[0].size() : 0;
  Matrix m(v.size(), cols);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_array() || v[i].size() != cols) throw ParseError(what + " has ragged or missing rows");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rat_from_json(v[i][j]);
  }
  return m;
}

inline json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(rat_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline std::size_t size_field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key) || !j[key].is_number_unsigned())
    throw ParseError(std::string("missing or invalid field \"") + key + "\"");
  return j[key].get<std::size_t>();
}

inline QuadricPencil pencil_from_json(const json& j) {
  const std::size_t N = size_field(j, "N");
  if (!j.contains("q0") || !j.contains("q1")) throw ParseError("pencil needs q0 and q1");
  const Matrix a = matrix_from_json(j["q0"], "q0"), b = matrix_from_json(j["q1"], "q1");
  for (const Matrix* m : {&a, &b})
    if (m->rows() != N + 1 || m->cols() != N + 1)
      throw MalformedPencil("Gram matrices must be " + std::to_string(N + 1) + " x " + std::to_string(N + 1));
  return {SymMat(a), SymMat(b)};
}

inline json pencil_to_json(const QuadricPencil& p) {
  return {{"N", p.N()}, {"q0", matrix_to_json(p.q0().matrix())}, {"q1", matrix_to_json(p.q1().matrix())}};
}

inline LinearSubspace subspace_from_json(const json& j) {
  const std::size_t r = size_field(j, "r");
  if (!j.contains("basis")) throw ParseError("subspace needs a basis");
  Matrix b = matrix_from_json(j["basis"], "basis");
  if (b.rows() != r + 1) throw ParseError("basis of an r-plane needs r+1 rows");
  return LinearSubspace(std::move(b));
}

inline json subspace_to_json(const LinearSubspace& ell) {
  return {{"r", ell.r()}, {"basis", matrix_to_json(ell.basis())}};
}

inline QuadricPencil load_pencil(const std::string& path) { return pencil_from_json(parse_json(read_file(path), path)); }
inline LinearSubspace load_subspace(const std::string& path) {
  return subspace_from_json(parse_json(read_file(path), path));
}

inline json binary_form_to_json(const BinaryForm& f) {
  json c = json::array();
  for (const auto& x : f.coeffs()) c.push_back(rat_to_json(x));
  return c;
}

inline json interval_to_json(const Interval& iv) { return {rat_to_json(iv.lo), rat_to_json(iv.hi)}; }

inline json reduced_pencil_to_json(const ReducedPencil& rp) {
  json eqs = json::array();
  for (const auto& eq : rp.equations) {
    json terms = json::array();
    for (const auto& t : eq) terms.push_back({t.exps, rat_to_json(t.coef)});
    eqs.push_back(std::move(terms));
  }
  return {{"N", rp.N}, {"r", rp.r}, {"variables", rp.variables}, {"equations", std::move(eqs)}};
}

inline json signature_to_json(const Signature& s) {
  return {{"positives", s.positives}, {"negatives", s.negatives}, {"corank", s.corank}};
}

inline std::string steps_string(const std::vector<int>& steps) {
  std::string s;
  for (int x : steps) s += x > 0 ? '+' : '-';
  return s;
}

inline json walk_to_json(const SignatureWalk& w) {
  json crossings = json::array();
  for (const auto& c : w.crossings) {
    json x = {{"lift", c.lift}};
    if (c.at_infinity) {
      x["chart"] = "t=0";
      x["root"] = "[1:0]";
    } else {
      x["chart"] = "t=1";
      x["interval"] = interval_to_json(c.interval);
    }
    crossings.push_back(std::move(x));
  }
  json arcs = json::array();
  for (const auto& a : w.arcs) arcs.push_back({a.positives, a.negatives});
  json samples = json::array();
  for (const auto& [s, t] : w.samples) samples.push_back({rat_to_json(s), rat_to_json(t)});
  return {{"crossings", std::move(crossings)},
          {"arcs", std::move(arcs)},
          {"samples", std::move(samples)},
          {"steps", steps_string(w.steps)}};
}

inline json verdict_to_json(const Verdict& v) { return {{"value", to_string(v.value)}, {"rule", v.rule}}; }

inline json verdict_table_to_json(const VerdictTable& t) {
  json levels = json::array();
  for (const auto& L : t.levels)
    levels.push_back({{"r", L.r},
                      {"fano_real_point", verdict_to_json(L.fano_real_point)},
                      {"q_real_connected", verdict_to_json(L.q_real_connected)},
                      {"q_rational", verdict_to_json(L.q_rational)},
                      {"fano_rational", verdict_to_json(L.fano_rational)},
                      {"fano_unirational", verdict_to_json(L.fano_unirational)}});
  return {{"N", t.N},
          {"invariant", t.invariant.runs()},
          {"invariant_text", t.invariant.str()},
          {"h", t.hf.h},
          {"f", t.hf.f},
          {"levels", std::move(levels)},
          {"flags",
           {{"even_maximal_fails", t.even_maximal_fails},
            {"even_unirational_not_rational", t.even_unirational_not_rational},
            {"odd_connected_irrational", t.odd_connected_irrational}}}};
}

inline json census_to_json(const ff::PlaneCensus& c) {
  json cells = json::array();
  for (const auto& [d, cell] : c.by_meet)
    cells.push_back({{"meet_dim", d},
                     {"span_in_x", cell.span_in_x},
                     {"span_not_in_x", cell.span_not_in_x},
                     {"total", cell.total()}});
  json ref = json::array();
  for (const auto& row : c.reference) ref.push_back(row);
  return {{"q", c.q}, {"r", c.r}, {"total", c.total}, {"reference", std::move(ref)}, {"by_meet", std::move(cells)}};
}

}  // namespace pencillab::io
