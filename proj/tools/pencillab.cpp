// pencillab: command-line front end. Every command writes one JSON document
// (or an aligned text rendering of it) to stdout; errors go to stderr and map
// to the exit codes in pencillab/error.hpp.

#include <openssl/evp.h>

#include <cstdio>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "pencillab/io.hpp"
#include "pencillab/verify.hpp"

using namespace pencillab;
using io::json;

namespace {

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 failed");
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return os.str();
}

double ceiling_from_env() {
  const char* v = std::getenv("PENCILLAB_CEILING");
  if (v == nullptr || *v == '\0') return ff::default_ceiling;
  char* end = nullptr;
  const double c = std::strtod(v, &end);
  if (end == v || *end != '\0' || !(c > 0)) throw InvalidArgument(std::string("PENCILLAB_CEILING must be positive, got '") + v + "'");
  return c;
}

char tri_char(Tri t) { return t == Tri::yes ? 'y' : t == Tri::no ? 'n' : '?'; }

/// One line per class: invariant, h, f, then per level the cells
/// F(real point) F(rational) F(unirational) Q(connected) Q(rational).
std::string table_text(const std::vector<VerdictTable>& rows, std::size_t N) {
  std::ostringstream os;
  std::size_t width = 10;
  for (const auto& t : rows) width = std::max(width, t.invariant.str().size() + 2);
  os << std::left << std::setw(static_cast<int>(width)) << "invariant" << std::setw(4) << "h" << std::setw(4) << "f";
  for (std::size_t r = 0; r + 1 <= N / 2; ++r) os << std::setw(8) << ("r=" + std::to_string(r));
  os << "flags\n";
  for (const auto& t : rows) {
    os << std::setw(static_cast<int>(width)) << t.invariant.str() << std::setw(4) << t.hf.h << std::setw(4) << t.hf.f;
    for (const auto& L : t.levels) {
      std::string cells{tri_char(L.fano_real_point.value), tri_char(L.fano_rational.value),
                        tri_char(L.fano_unirational.value), tri_char(L.q_real_connected.value),
                        tri_char(L.q_rational.value)};
      os << std::setw(8) << cells;
    }
    std::string flags;
    if (t.even_maximal_fails) flags += " even-maximal-fails";
    if (t.even_unirational_not_rational) flags += " even-unirational-not-rational";
    if (t.odd_connected_irrational) flags += " odd-connected-irrational";
    os << (flags.empty() ? "-" : flags.substr(1)) << "\n";
  }
  os << "cells per level: F real point, F rational, F unirational, Q connected, Q rational (y/n/?)\n";
  return os.str();
}

json analyze(const std::string& path, std::string& text) {
  const std::string bytes = io::read_file(path);
  const QuadricPencil p = io::pencil_from_json(io::parse_json(bytes, path));
  const SmoothnessReport rep = validate_smooth(p);
  if (!rep.smooth) throw SingularPencil("pencil is singular; repeated factor " + rep.witness.str());
  const RootIsolation iso = isolate_real_roots(rep.discriminant);
  const KrasnovResult k = krasnov_of_pencil(p);
  const VerdictTable table = decide(p.N(), k.invariant);
  json roots = json::array();
  for (const auto& iv : iso.intervals) roots.push_back(io::interval_to_json(iv));
  json out = {{"input", {{"sha256", sha256_hex(bytes)}, {"N", p.N()}}},
              {"smooth", true},
              {"discriminant",
               {{"coefficients", io::binary_form_to_json(rep.discriminant)},
                {"squarefree", iso.squarefree},
                {"root_at_infinity", iso.root_at_infinity},
                {"real_roots", std::move(roots)}}},
              {"walk", io::walk_to_json(k.walk)},
              {"invariant", k.invariant.runs()},
              {"invariant_text", k.invariant.str()},
              {"h", k.hf.h},
              {"f", k.hf.f},
              {"verdicts", io::verdict_table_to_json(table)}};
  std::ostringstream os;
  os << "pencil     " << path << " (sha256 " << out["input"]["sha256"].get<std::string>() << ")\n"
     << "N          " << p.N() << "\n"
     << "delta      " << rep.discriminant.str() << "\n"
     << "real roots " << iso.count() << "\n"
     << "steps      " << io::steps_string(k.walk.steps) << "\n"
     << "invariant  " << k.invariant.str() << "  h = " << k.hf.h << "  f = " << k.hf.f << "\n\n"
     << table_text({table}, p.N());
  text = os.str();
  return out;
}

std::pair<Rat, Rat> parse_point(const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw InvalidArgument("--at expects s:t, got '" + s + "'");
  try {
    return {parse_rat(s.substr(0, colon)), parse_rat(s.substr(colon + 1))};
  } catch (const ParseError& e) {
    throw InvalidArgument(std::string("--at: ") + e.what());
  }
}

json reduce(const std::string& pencil_path, const std::string& plane_path, const std::vector<std::string>& at) {
  const QuadricPencil p = io::load_pencil(pencil_path);
  const LinearSubspace ell = io::load_subspace(plane_path);
  if (ell.ambient() != p.N()) throw InvalidArgument("plane and pencil live in different projective spaces");
  json out = io::reduced_pencil_to_json(hyperbolic_reduce(p, ell));
  if (!at.empty()) {
    json fibers = json::array();
    for (const auto& spec : at) {
      const auto [s, t] = parse_point(spec);
      const ReducedFiber rf = reduced_fiber(p, ell, s, t);
      const Signature big = signature_of(p.fiber(s, t)), small = signature_of(rf.gram);
      fibers.push_back({{"s", io::rat_to_json(s)},
                        {"t", io::rat_to_json(t)},
                        {"gram", io::matrix_to_json(rf.gram.matrix())},
                        {"signature", io::signature_to_json(small)},
                        {"ambient_signature", io::signature_to_json(big)},
                        {"difference",
                         {static_cast<long>(big.positives) - static_cast<long>(small.positives),
                          static_cast<long>(big.negatives) - static_cast<long>(small.negatives)}},
                        {"corank", small.corank}});
    }
    out["fibers"] = std::move(fibers);
  }
  return out;
}

json isotopy(std::size_t N, const std::vector<std::string>& filters, std::string& text) {
  const ClassificationReport rep = table_for_N(N);
  std::vector<Predicate> preds;
  for (const auto& f : filters) preds.push_back(parse_predicate(f));
  std::vector<VerdictTable> kept;
  for (const auto& row : rep.rows)
    if (std::all_of(preds.begin(), preds.end(), [&](const Predicate& p) { return p(row); })) kept.push_back(row);
  json rows = json::array(), names = json::array();
  for (const auto& row : kept) {
    rows.push_back(io::verdict_table_to_json(row));
    names.push_back(row.invariant.str());
  }
  text = table_text(kept, N);
  return {{"N", N}, {"filters", filters}, {"count", kept.size()}, {"invariants", std::move(names)}, {"classes", std::move(rows)}};
}

json count(const std::string& pencil_path, std::uint32_t prime, unsigned ext, std::size_t r,
           const std::string& ell_path, unsigned jobs, double ceiling) {
  const QuadricPencil p = io::load_pencil(pencil_path);
  require_smooth(p);
  const auto field = std::make_shared<const ff::Field>(ff::Field::of_degree(prime, ext));
  const ff::FqPencil fp = ff::reduce_pencil(p, field);
  json out = {{"N", p.N()}, {"prime", prime}, {"ext", ext}, {"q", field->order()}, {"r", r}};
  if (!ell_path.empty()) {
    const LinearSubspace ell = io::load_subspace(ell_path);
    if (ell.r() != r) throw InvalidArgument("--ell is a " + std::to_string(ell.r()) + "-plane but --r is " + std::to_string(r));
    if (ell.ambient() != p.N()) throw InvalidArgument("plane and pencil live in different projective spaces");
    const auto b = ff::check_reduction_bijection(p, ell, field, ceiling, jobs);
    out["census"] = io::census_to_json(b.census);
    out["bijection"] = {{"lhs", b.lhs}, {"lhs_inner_rows", b.lhs_alt}, {"rhs", b.rhs}, {"equal", b.lhs == b.rhs}};
    if (p.N() % 2 == 0 && r + 1 == p.N() / 2) {
      const ff::SchemeLength len = ff::reduced_scheme_length(p, ell, prime);
      out["reduced_scheme"] = {{"g", len.g},
                               {"points_base", len.points_base},
                               {"length_base", len.length_base},
                               {"points_ext", len.points_ext},
                               {"length_ext", len.length_ext},
                               {"fallback_points", len.fallback_points},
                               {"split", len.split},
                               {"lower_bound", len.lower_bound()}};
    }
  } else {
    out["census"] = io::census_to_json(ff::census_planes(fp, r, std::nullopt, ceiling, jobs));
  }
  out["points"] = ff::count_points(fp, ceiling);
  out["discriminant_roots"] = ff::discriminant_roots(fp);
  return out;
}

json verify_cmd(const verify::Options& o, bool& ok, std::string& text) {
  const auto results = verify::run_all(o);
  ok = true;
  json props = json::array();
  std::ostringstream os;
  for (const auto& r : results) {
    ok = ok && r.failed == 0;
    json x = {{"name", r.name}, {"passed", r.passed}, {"failed", r.failed}};
    if (r.failed) x["first_failure"] = r.first_failure;
    props.push_back(std::move(x));
    os << (r.failed ? "FAIL " : "ok   ") << std::left << std::setw(40) << r.name << r.passed << " passed, " << r.failed
       << " failed";
    if (r.failed) os << "  (" << r.first_failure << ")";
    os << "\n";
  }
  json out = {{"seed", o.seed}, {"trials", o.trials}, {"inject_fault", o.inject_fault}, {"ok", ok}, {"properties", props}};
  if (o.trials == 0) {
    out["warning"] = "trials = 0: every property passes vacuously";
    std::cerr << "warning: trials = 0, every property passes vacuously\n";
  }
  text = os.str();
  return out;
}

void emit(const json& j, const std::string& text, const std::string& format) {
  if (format == "text")
    std::cout << text;
  else
    std::cout << j.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pencillab: pencils of two quadrics, exactly"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "json";
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "text"}));

  std::string pencil_path, plane_path, ell_path;
  std::vector<std::string> at, filters;
  std::size_t N = 0, r = 1;
  std::uint32_t prime = 0;
  unsigned ext = 1, jobs = 1;
  verify::Options vo;

  auto* a = app.add_subcommand("analyze", "signature walk, Krasnov invariant and verdict table of a pencil");
  a->add_option("pencil", pencil_path, "pencil JSON")->required();

  auto* red = app.add_subcommand("reduce", "hyperbolic reduction by a plane on X");
  red->add_option("pencil", pencil_path, "pencil JSON")->required();
  red->add_option("plane", plane_path, "subspace JSON")->required();
  red->add_option("--at", at, "fiber s:t to reduce numerically (repeatable)");

  auto* iso = app.add_subcommand("isotopy", "isotopy classes and verdicts for P^N");
  iso->add_option("N", N, "ambient dimension")->required();
  iso->add_option("--filter", filters, "predicate such as f2-real-point or h=4,f=1 (repeatable, all must hold)");

  auto* cnt = app.add_subcommand("count", "finite-field census of r-planes on X");
  cnt->add_option("pencil", pencil_path, "pencil JSON")->required();
  cnt->add_option("--prime", prime, "odd prime")->required();
  cnt->add_option("--ext", ext, "extension degree")->check(CLI::IsMember({1U, 2U}));
  cnt->add_option("--r", r, "plane dimension")->required();
  cnt->add_option("--ell", ell_path, "reference plane JSON; adds bijection and length checks");
  cnt->add_option("--jobs", jobs, "threads")->check(CLI::PositiveNumber);

  auto* ver = app.add_subcommand("verify", "run the property batteries");
  ver->add_option("--seed", vo.seed, "seed");
  ver->add_option("--trials", vo.trials, "trials per property");
  ver->add_option("--jobs", vo.jobs, "threads")->check(CLI::PositiveNumber);
  ver->add_flag("--inject-fault", vo.inject_fault, "negate the antipodal check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : static_cast<int>(ExitCode::invalid_argument);
  }

  try {
    std::string text;
    if (*a) {
      const json j = analyze(pencil_path, text);
      emit(j, text, format);
    } else if (*red) {
      const json j = reduce(pencil_path, plane_path, at);
      emit(j, j.dump(2) + "\n", format);
    } else if (*iso) {
      const json j = isotopy(N, filters, text);
      emit(j, text, format);
    } else if (*cnt) {
      const json j = count(pencil_path, prime, ext, r, ell_path, jobs, ceiling_from_env());
      emit(j, j.dump(2) + "\n", format);
    } else if (*ver) {
      bool ok = true;
      const json j = verify_cmd(vo, ok, text);
      emit(j, text, format);
      if (!ok) return static_cast<int>(ExitCode::inconsistency);
    }
  } catch (const CeilingExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(e.code());
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(e.code());
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::parse_error);
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::unexpected);
  }
  return 0;
}
