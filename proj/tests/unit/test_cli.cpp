#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "orthant/cli.hpp"
#include "support/shapes.hpp"

using namespace orthant;
using cli::json;

namespace {

struct Result {
  int code;
  std::string out, err;
  [[nodiscard]] json report() const { return json::parse(out); }
};

Result run(std::vector<std::string> args, const std::string& stdin_text = "") {
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  const int code = cli::run(args, out, err, in);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("orthant_cli_" + name);
  std::ofstream(path) << text;
  return path.string();
}

std::string polyhedron_text(const Polyhedron<Rational>& p) { return io::to_json(p).dump(); }

}  // namespace

TEST(Cli, GeneratedCrossPolytopeIsOrthant) {
  const auto gen = run({"gen", "cross", "3"});
  ASSERT_EQ(gen.code, 0) << gen.err;
  const auto r = run({"is-orthant"}, gen.out);
  EXPECT_EQ(r.code, cli::kExitOrthant) << r.err;
  const auto j = r.report();
  EXPECT_EQ(j["verdict"], "Positive");
  EXPECT_EQ(j["certified"], true);
  EXPECT_EQ(j["witness"], json(std::vector<std::string>(8, "1/8")));
  EXPECT_NE(r.err.find("time:"), std::string::npos);
}

TEST(Cli, RightTriangleCertificate) {
  const auto f = temp_file("right.json", polyhedron_text(shapes::right_triangle()));
  const auto r = run({"is-orthant", f});
  EXPECT_EQ(r.code, cli::kExitNotOrthant) << r.err;
  const auto j = r.report();
  EXPECT_EQ(j["orthant"], false);
  EXPECT_EQ(j["certificate"], json({"0", "0", "1"}));
}

TEST(Cli, RegularSimplexMetric) {
  const auto f = temp_file("regular.json", R"({"dim":2,"d2":["0","2","2","2","0","2","2","2","0"]})");
  const auto r = run({"simplex", f});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.report()["class"], "OrthantAcuteOrthocentric");
  EXPECT_EQ(r.report()["x"], json({"1", "1", "1"}));
}

TEST(Cli, ExactOutputIsByteStable) {
  const auto text = polyhedron_text(shapes::acute_prism());
  for (const char* cmd : {"is-orthant", "rank", "reduce", "decompose", "embed", "realize"}) {
    const auto a = run({cmd, "--dump-bang"}, text), b = run({cmd, "--dump-bang"}, text);
    EXPECT_EQ(a.out, b.out) << cmd;
    EXPECT_FALSE(a.out.empty()) << cmd << ": " << a.err;
  }
}

TEST(Cli, ReduceIsAFixedPoint) {
  for (auto gen : std::vector<std::vector<std::string>>{
           {"gen", "cube", "3"}, {"gen", "cross", "3"}, {"gen", "endgo", "3"}, {"gen", "simplex", "3", "4"},
           {"gen", "random", "3", "7", "--seed", "5"}, {"gen", "random", "2", "6", "--seed", "9"}}) {
    const auto f = run(gen);
    ASSERT_EQ(f.code, 0) << f.err;
    const auto g = run({"reduce"}, f.out);
    ASSERT_EQ(g.code, 0) << g.err;
    const auto h = run({"reduce"}, g.out);
    EXPECT_EQ(h.out, g.out) << gen[1];
  }
}

TEST(Cli, Classify2dAgreesWithIsOrthant) {
  oracle::Random rng(91);
  int orthant = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const auto p = shapes::random_polyhedron(rng, 2, static_cast<std::size_t>(rng.integer(2, 6)));
    if (!is_nondegenerate(p)) continue;
    const auto text = polyhedron_text(p);
    const auto c = run({"classify2d"}, text);
    const auto d = run({"is-orthant"}, text);
    ASSERT_EQ(c.code, 0) << c.err;
    ASSERT_NE(d.code, cli::kExitError) << d.err;
    const bool closed = c.report()["class"] != "NotOrthant";
    EXPECT_EQ(closed, d.code == cli::kExitOrthant) << text;
    orthant += closed;
  }
  EXPECT_GT(orthant, 5);
}

TEST(Cli, DecomposeMapsToOriginalRows) {
  const auto text = polyhedron_text(shapes::square());
  const auto j = run({"decompose"}, text).report();
  EXPECT_EQ(j["orthant"], true);
  EXPECT_EQ(j["union_rank"], 2);
  for (const auto& rows : j["row_subsets"])
    for (const auto& i : rows) EXPECT_LT(i.get<int>(), 4);
  EXPECT_EQ(run({"decompose"}, polyhedron_text(shapes::right_triangle())).report()["orthant"], false);
}

TEST(Cli, EmbeddingReports) {
  const auto tri = polyhedron_text(shapes::acute_triangle());
  const auto e = run({"embed"}, tri);
  ASSERT_EQ(e.code, 0) << e.err;
  const auto j = e.report();
  EXPECT_EQ(j["target_dim"], 3);
  EXPECT_EQ(j["vertices"].size(), 3u);
  EXPECT_EQ(j["system"]["rows"].size(), 3u);

  const auto right = polyhedron_text(shapes::right_triangle());
  EXPECT_EQ(run({"embed"}, right).code, cli::kExitError);
  const auto r = run({"realize"}, right);
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.report()["target_dim"], 4);
  const auto a = run({"realize", "--affine"}, right);
  EXPECT_EQ(a.report()["affine"], true);
  EXPECT_EQ(a.report()["target_dim"], 3);
  // Images of (0,0): slacks (0, 0, 1) scaled by k_i.
  const auto rj = r.report();
  EXPECT_EQ(rj["vertices"][0]["image"][2], rj["k"][2]);
}

TEST(Cli, FloatBackend) {
  const auto text = polyhedron_text(shapes::acute_triangle());
  const auto r = run({"is-orthant", "--backend", "float"}, text);
  EXPECT_EQ(r.code, cli::kExitOrthant) << r.err;
  EXPECT_EQ(r.report()["backend"], "float");
  EXPECT_EQ(r.report()["certified"], false);
  EXPECT_TRUE(r.report().contains("numeric_marginal"));

  json tagged = json::parse(text);
  tagged["backend"] = "float";
  EXPECT_EQ(run({"rank"}, tagged.dump()).report()["backend"], "float");
  EXPECT_EQ(run({"rank", "--backend", "exact"}, tagged.dump()).report()["backend"], "exact");
}

TEST(Cli, ConeFixture) {
  const auto g = temp_file("gram.json", R"({"m":4,"g":["4","2","0","2","2","4","2","0","0","2","4","2","2","0","2","4"]})");
  const auto b = temp_file("b.json", R"({"rows":4,"cols":4,"b":[1,0,1,0,1,0,0,1,0,1,0,1,0,1,1,0],"scale":"2"})");
  const auto r = run({"cone", g, "--cp", b});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.report()["doubly_nonnegative"], true);
  EXPECT_EQ(r.report()["cp_verified"], true);
  const auto unscaled = temp_file("b1.json", R"({"rows":4,"cols":4,"b":[1,0,1,0,1,0,0,1,0,1,0,1,0,1,1,0]})");
  EXPECT_EQ(run({"cone", g, "--cp", unscaled}).report()["cp_verified"], false);
}

TEST(Cli, RankReport) {
  const auto j = run({"rank"}, run({"gen", "endgo", "3"}).out).report();
  EXPECT_EQ(j["rank"], 6);
  EXPECT_EQ(j["consistent"], true);
}

TEST(Cli, ErrorsExitTwoWithOneLine) {
  for (auto args : std::vector<std::vector<std::string>>{{"is-orthant", "/nonexistent/file.json"},
                                                           {"frobnicate"},
                                                           {"gen", "cube", "zero"},
                                                           {"gen", "tetra", "3"},
                                                           {"--backend", "quad", "rank"},
                                                           {"classify2d"}}) {
    const auto r = run(args, polyhedron_text(cube<Rational>(3)));
    EXPECT_EQ(r.code, cli::kExitError) << args[0];
    EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1) << r.err;
    EXPECT_TRUE(r.out.empty());
  }
  EXPECT_EQ(run({"is-orthant"}, "{\"dim\": 2").code, cli::kExitError);
}
