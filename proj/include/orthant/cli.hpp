#pragma once

/**
 * Command-line front end. Reports are JSON on `out`; a one-line summary and
 * the timing go to `err`, so stdout stays byte-stable for exact input.
 *
 * Exit codes: 0 success (or orthant for is-orthant), 1 not orthant,
 * 2 usage, parse, or precondition failure.
 */

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "orthant/classify.hpp"
#include "orthant/cones.hpp"
#include "orthant/hedgehog.hpp"
#include "orthant/io.hpp"
#include "orthant/positivity.hpp"
#include "orthant/realize.hpp"
#include "orthant/structure.hpp"

namespace orthant::cli {

using json = nlohmann::json;

inline constexpr int kExitOrthant = 0;
inline constexpr int kExitNotOrthant = 1;
inline constexpr int kExitError = 2;
/// Mapped vertices listed in embedding reports.
inline constexpr std::size_t kVertexSample = 8;

struct Options {
  std::string command;
  std::string backend;  // empty: take the file's, else exact
  double tol = kDefaultTolerance;
  bool dump_bang = false;
  bool affine = false;
  std::uint64_t seed = 1;
  std::string input = "-";
  std::string cp_file;
  std::vector<std::string> gen_args;
};

struct Report {
  json body;
  std::string summary;
  int code = 0;
};

namespace detail {

inline std::string read_source(const std::string& path, std::istream& in) {
  std::ostringstream buf;
  if (path == "-") {
    buf << in.rdbuf();
  } else {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open " + path);
    buf << f.rdbuf();
  }
  return buf.str();
}

inline std::string fixed15(double x) {
  char s[40];
  std::snprintf(s, sizeof s, "%.15g", x);
  return s;
}

template <Scalar T>
json bang_json(const BangSystem<T>& s) {
  json pairs = json::array();
  for (auto [p, q] : s.pairs) pairs.push_back({p, q});
  return {{"pairs", pairs}, {"q", io::to_json(s.q)}, {"c", io::to_json(s.c)}};
}

template <Scalar T>
void attach_outcome(json& body, const PositivityOutcome<T>& out) {
  body["verdict"] = std::string(to_string(out.verdict));
  if (out.witness) body["witness"] = io::to_json(*out.witness);
  if (out.certificate) body["certificate"] = io::to_json(*out.certificate);
  if (out.margin) body["margin"] = format(*out.margin);
  if constexpr (!is_exact_v<T>) body["numeric_marginal"] = out.numeric_marginal;
}

// Decide on the reduced system, then carry the answer back to P's rows and
// re-check it there.
template <Scalar T>
PositivityOutcome<T> decide_original(const Polyhedron<T>& p, const Reduction<T>& r) {
  auto out = decide_positive(build_bang_system(r.system));
  if (out.witness) out.witness = r.lift_witness(*out.witness);
  if (out.certificate) out.certificate = r.lift_certificate(*out.certificate);
  if (!verify_outcome(build_bang_system(p), out)) throw Error("lifted answer failed verification");
  return out;
}

template <Scalar T>
Polyhedron<T> load_polyhedron(const Options& o, std::istream& in) {
  return io::read_polyhedron<T>(io::parse_text(read_source(o.input, in)), o.tol);
}

template <Scalar T>
Report is_orthant_cmd(const Options& o, std::istream& in) {
  const auto p = load_polyhedron<T>(o, in);
  const auto r = reduce(p);
  const auto out = decide_original(p, r);
  Report rep;
  rep.body["orthant"] = out.positive();
  attach_outcome(rep.body, out);
  rep.body["certified"] = is_exact_v<T>;
  rep.code = out.positive() ? kExitOrthant : kExitNotOrthant;
  rep.summary = std::string(out.positive() ? "orthant" : "not orthant") + " (" + std::string(to_string(out.verdict)) +
                (is_exact_v<T> ? ", certified)" : ", float)");
  return rep;
}

template <Scalar T>
Report rank_cmd(const Options& o, std::istream& in) {
  const auto p = load_polyhedron<T>(o, in);
  const auto s = build_bang_system(p);
  const std::size_t n = p.dim();
  Report rep;
  rep.body["rank"] = poly_rank(s);
  rep.body["rank_augmented"] = rank(s.q.augment(s.c));
  rep.body["consistent"] = is_consistent(s);
  rep.body["bounds"] = {n, n * (n + 1) / 2};
  rep.summary = "rank " + std::to_string(poly_rank(s)) + (is_consistent(s) ? ", consistent" : ", inconsistent");
  return rep;
}

template <Scalar T>
Report reduce_cmd(const Options& o, std::istream& in) {
  const auto r = reduce(load_polyhedron<T>(o, in));
  Report rep;
  rep.body = io::to_json(r.system);
  rep.summary = std::to_string(r.hedgehog.size()) + " needles" + (r.hedgehog.staircase ? ", staircase" : "");
  return rep;
}

template <Scalar T>
Report classify2d_cmd(const Options& o, std::istream& in) {
  const auto p = load_polyhedron<T>(o, in);
  if (p.dim() != 2) throw WrongDimension("classify2d needs a 2-dimensional polyhedron");
  const auto r = reduce(p);
  const auto c = classify_2d(r.hedgehog);
  const auto lp = decide_original(p, r);
  if (is_orthant(c.verdict) != lp.positive())
    throw Error("closed form (" + std::string(to_string(c.verdict)) + ") disagrees with the LP (" +
                std::string(to_string(lp.verdict)) + ")");
  Report rep;
  rep.body["class"] = std::string(to_string(c.verdict));
  json needles = json::array();
  for (const auto& v : c.sorted_needles) needles.push_back(io::to_json(v));
  rep.body["sorted_needles"] = needles;
  if (c.p_index) rep.body["p_index"] = *c.p_index;
  json cross;
  attach_outcome(cross, lp);
  rep.body["lp"] = cross;
  rep.summary = std::string(to_string(c.verdict)) + ", LP agrees";
  return rep;
}

template <Scalar T>
Report simplex_cmd(const Options& o, std::istream& in) {
  const auto s = io::read_metric<T>(io::parse_text(read_source(o.input, in)), o.tol);
  const auto c = classify_simplex(s);
  Report rep;
  rep.body["class"] = std::string(to_string(c));
  if (c == SimplexClass::OrthantAcuteOrthocentric) rep.body["x"] = io::to_json(embed_simplex(s));
  rep.summary = std::string(to_string(c));
  return rep;
}

template <Scalar T>
Report decompose_cmd(const Options& o, std::istream& in) {
  const auto p = load_polyhedron<T>(o, in);
  const auto r = reduce(p);
  const auto d = find_basic_decomposition(r.hedgehog);
  Report rep;
  rep.body["orthant"] = d.has_value();
  if (!d) {
    rep.summary = "not orthant, no decomposition";
    return rep;
  }
  json subsets = json::array(), rows = json::array(), witnesses = json::array();
  for (std::size_t k = 0; k < d->subsets.size(); ++k) {
    subsets.push_back(d->subsets[k]);
    std::vector<std::size_t> orig;
    for (auto j : d->subsets[k]) orig.push_back(r.source_rows[j]);
    rows.push_back(orig);
    witnesses.push_back(io::to_json(d->witnesses[k]));
  }
  rep.body["needle_subsets"] = subsets;
  rep.body["row_subsets"] = rows;
  rep.body["witnesses"] = witnesses;
  rep.body["union_rank"] = d->union_rank;
  rep.summary = std::to_string(d->subsets.size()) + " basic orthant subsets, union rank " + std::to_string(d->union_rank);
  return rep;
}

template <Scalar T>
Report embedding_report(const Polyhedron<T>& p, const Embedding<T>& e) {
  const auto verts = vertices(p);
  if (!verify_embedding(e, verts)) throw Error("embedding failed verification");
  Report rep;
  rep.body["source_dim"] = e.source_dim;
  rep.body["target_dim"] = e.target_dim;
  rep.body["affine"] = e.affine;
  rep.body["t"] = io::to_json(e.t);
  json k = json::array();
  for (const auto& x : e.t) k.push_back(fixed15(std::sqrt(to_double(x))));
  rep.body["k"] = k;
  rep.body["system"] = io::to_json(Polyhedron<T>(e.a_ext, e.b_ext));
  rep.body["original_rows"] = e.original_rows;
  json mapped = json::array();
  for (std::size_t i = 0; i < verts.size() && i < kVertexSample; ++i) {
    json img = json::array();
    for (double y : e.image(verts[i])) img.push_back(fixed15(y));
    mapped.push_back({{"x", io::to_json(verts[i])}, {"image", img}});
  }
  rep.body["vertices"] = mapped;
  rep.summary = "target dimension " + std::to_string(e.target_dim) + (e.affine ? " (affine)" : "");
  return rep;
}

template <Scalar T>
Report embed_cmd(const Options& o, std::istream& in) {
  const auto p = load_polyhedron<T>(o, in);
  if (o.affine) return embedding_report(p, build_affine_embedding(p));
  const auto out = decide_original(p, reduce(p));
  if (!out.positive()) throw NotOrthant("not orthant (" + std::string(to_string(out.verdict)) + "); try realize");
  return embedding_report(p, build_embedding(p, *out.witness));
}

template <Scalar T>
Report realize_cmd(const Options& o, std::istream& in) {
  const auto p = load_polyhedron<T>(o, in);
  if (o.affine) return embedding_report(p, build_affine_embedding(p));
  return embedding_report(p, realize_unbounded(p));
}

inline std::size_t size_arg(const std::vector<std::string>& args, std::size_t i, const char* what) {
  if (i >= args.size()) throw ParseError(std::string("gen: missing ") + what);
  try {
    std::size_t pos = 0;
    const long v = std::stol(args[i], &pos);
    if (pos != args[i].size() || v < 1) throw ParseError("");
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw ParseError(std::string("gen: ") + what + " must be a positive integer, got '" + args[i] + "'");
  }
}

template <Scalar T>
Report gen_cmd(const Options& o) {
  const auto& a = o.gen_args;
  if (a.empty()) throw ParseError("gen: missing family (cube, cross, endgo, simplex, random)");
  const std::string& family = a[0];
  Polyhedron<T> p = [&] {
    if (family == "cube") return cube<T>(size_arg(a, 1, "dimension"));
    if (family == "cross") return cross_polytope<T>(size_arg(a, 1, "dimension"));
    if (family == "endgo") return endgo<T>(size_arg(a, 1, "dimension"));
    if (family == "random") return random_polytope<T>(size_arg(a, 1, "dimension"), size_arg(a, 2, "facet bound"), o.seed);
    if (family == "simplex") {
      Vec<T> alphas;
      for (std::size_t i = 1; i < a.size(); ++i) alphas.push_back(parse_scalar<T>(a[i], o.tol));
      return simplex_from_alphas(alphas);
    }
    throw ParseError("gen: unknown family '" + family + "'");
  }();
  Report rep;
  rep.body = io::to_json(p);
  rep.summary = family + ": dimension " + std::to_string(p.dim()) + ", " + std::to_string(p.facets()) + " facets";
  return rep;
}

template <Scalar T>
Report cone_cmd(const Options& o, std::istream& in) {
  const auto g = io::read_gram<T>(io::parse_text(read_source(o.input, in)), o.tol);
  Report rep;
  const bool dnn = is_doubly_nonnegative(g);
  rep.body["doubly_nonnegative"] = dnn;
  rep.summary = dnn ? "doubly nonnegative" : "not doubly nonnegative";
  if (!o.cp_file.empty()) {
    const auto f = io::read_decomposition<T>(io::parse_text(read_source(o.cp_file, in)), o.tol);
    const bool cp = verify_cp_decomposition(g, f.b, f.scale);
    rep.body["cp_verified"] = cp;
    rep.summary += cp ? ", CP factor verified" : ", CP factor rejected";
  }
  return rep;
}

template <Scalar T>
Report dispatch(const Options& o, std::istream& in) {
  const std::string& c = o.command;
  if (c == "is-orthant") return is_orthant_cmd<T>(o, in);
  if (c == "rank") return rank_cmd<T>(o, in);
  if (c == "reduce") return reduce_cmd<T>(o, in);
  if (c == "classify2d") return classify2d_cmd<T>(o, in);
  if (c == "simplex") return simplex_cmd<T>(o, in);
  if (c == "decompose") return decompose_cmd<T>(o, in);
  if (c == "embed") return embed_cmd<T>(o, in);
  if (c == "realize") return realize_cmd<T>(o, in);
  if (c == "gen") return gen_cmd<T>(o);
  if (c == "cone") return cone_cmd<T>(o, in);
  throw ParseError("unknown command '" + c + "'");
}

// Every input-backed command reads its file once so the file's backend
// field can pick the scalar type; the text is then replayed as stdin.
inline std::string resolve_backend(Options& o, std::istream& in, std::string& buffered) {
  if (o.command == "gen") return o.backend.empty() ? "exact" : o.backend;
  buffered = read_source(o.input, in);
  o.input = "-";
  const auto b = io::backend_of(io::parse_text(buffered));
  if (!o.backend.empty()) return o.backend;
  return b.empty() ? "exact" : b;
}

}  // namespace detail

/// Runs one command; args excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::istream& in = std::cin) {
  Options o;
  CLI::App app{"Orthant polyhedra: decisions, certificates, embeddings", "orthant"};
  app.require_subcommand(1);
  app.add_option("--backend", o.backend, "Scalar backend")->check(CLI::IsMember({"exact", "float"}));
  app.add_option("--tol", o.tol, "Float tolerance")->check(CLI::PositiveNumber);
  app.add_flag("--dump-bang", o.dump_bang, "Include the Bang system in the report");
  app.add_flag("--affine", o.affine, "Affine section instead of an isometry (embed, realize)");
  app.add_option("--seed", o.seed, "Seed for randomized generators");

  const std::pair<const char*, const char*> file_commands[] = {
      {"is-orthant", "Decide orthantness with witness or certificate"},
      {"rank", "Bang rank and consistency"},
      {"reduce", "Reduced form"},
      {"classify2d", "Planar closed-form classification, LP cross-checked"},
      {"simplex", "Classify a simplex given by squared distances"},
      {"decompose", "Basic orthant decomposition"},
      {"embed", "Orthant embedding from a positive Bang solution"},
      {"realize", "Embedding into a larger orthant"},
  };
  for (auto [name, help] : file_commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->fallthrough();
    sub->add_option("file", o.input, "Input file, - for stdin");
  }
  auto* gen = app.add_subcommand("gen", "Write a polyhedron: cube N | cross N | endgo N | simplex A1 .. Ak | random N M");
  gen->fallthrough();
  gen->add_option("params", o.gen_args)->required();
  auto* cone = app.add_subcommand("cone", "Doubly nonnegative check and CP verification of a Gram matrix");
  cone->fallthrough();
  cone->add_option("file", o.input, "Gram matrix file, - for stdin");
  cone->add_option("--cp", o.cp_file, "Decomposition file to verify");

  std::vector<std::string> argv_store{"orthant"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : argv_store) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  for (auto* sub : app.get_subcommands()) o.command = sub->get_name();

  const auto start = std::chrono::steady_clock::now();
  try {
    std::string buffered;
    const std::string backend = detail::resolve_backend(o, in, buffered);
    std::istringstream replay(buffered);
    std::istream& src = o.command == "gen" ? in : replay;
    const bool exact = backend == "exact";
    Report rep = exact ? detail::dispatch<Rational>(o, src) : detail::dispatch<Real>(o, src);
    if (o.dump_bang && o.command != "gen" && o.command != "simplex" && o.command != "cone") {
      std::istringstream again(buffered);
      if (exact)
        rep.body["bang"] = detail::bang_json(build_bang_system(detail::load_polyhedron<Rational>(o, again)));
      else
        rep.body["bang"] = detail::bang_json(build_bang_system(detail::load_polyhedron<Real>(o, again)));
    }
    if (o.command != "gen" && o.command != "reduce") {
      json head{{"command", o.command}, {"backend", backend}};
      head.update(rep.body);
      rep.body = std::move(head);
    }
    out << rep.body.dump(2) << "\n";
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    err << o.command << ": " << rep.summary << "\n" << "time: " << detail::fixed15(ms) << " ms\n";
    return rep.code;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

}  // namespace orthant::cli
