#include <fstream>
#include <sstream>

#include "doctest.h"
#include "rigidan/cli.hpp"
#include "rigidan/errors.hpp"
#include "rigidan/random.hpp"
#include "rigidan/selftest.hpp"

using namespace rigidan;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string sample(const std::string& name) { return std::string(RIGIDAN_SAMPLES) + "/" + name; }

std::string temp(const std::string& name, const std::string& content) {
  const std::string path = std::string(RIGIDAN_TEMP) + "/" + name;
  std::ofstream(path) << content;
  return path;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("serialization round trips") {
  auto ctx = PadicContext::create();
  for (int i = 0; i < 30; ++i) {
    Rng rng = Rng::for_case(5, "roundtrip", i);
    const auto x = gen::unit(ctx, rng) * PadicNumber::power_of_p(ctx, rng.uniform(-4, 4));
    CHECK(padic_from_json(ctx, to_json(x)) == x);
    const auto low = x.with_absolute_precision(x.valuation().value() + 5);
    const auto back = padic_from_json(ctx, to_json(low));
    CHECK(back.absolute_precision() == low.absolute_precision());
    CHECK(agrees_to(back, low, low.absolute_precision().value()) == Tristate::yes);

    const auto f = gen::piecewise(ctx, rng, 1, 4);
    CHECK(canonical(to_json(function_from_json(ctx, to_json(f)))) == canonical(to_json(f)));
    const auto s = gen::series(ctx, rng, 2, 6).with_tail_bound(Valuation(30));
    CHECK(canonical(to_json(series_from_json(ctx, to_json(s)))) == canonical(to_json(s)));
    const auto g = gen::iwahori(ctx, rng);
    CHECK(matrix_from_json(ctx, to_json(g)).agrees(g, 40) == Tristate::yes);
    const auto chi = gen::character(ctx, rng);
    CHECK(character_from_json(ctx, to_json(chi)).same_parameters(chi));
    const auto d = gen::continuous_character(ctx, rng);
    CHECK(same_character(continuous_character_from_json(ctx, to_json(d)), d) == Tristate::yes);
  }
  CHECK(to_json(PadicNumber::zero_to(ctx, 7)) == json({{"precision", 7}, {"value", "0"}}));
  CHECK(padic_from_json(ctx, json({{"precision", 7}, {"value", "0"}})).absolute_precision() == Valuation(7));
  CHECK(to_json(PadicNumber::from_int(ctx, -10)) == json("-10"));
  CHECK_THROWS_AS(parse_file("{", "series", ctx), FormatError);
  CHECK_THROWS_AS(parse_file("{}", "series", ctx), FormatError);
  CHECK_THROWS_AS(series_from_json(ctx, json({{"level", 1}})), FormatError);
}

TEST_CASE("classify") {
  auto r = cli({"classify", sample("crystalline.json")});
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["S_star"] == true);
  CHECK(j["S_cris"] == true);
  CHECK(j["u"] == 1);
  CHECK(j["w"] == 2);
  CHECK(json::parse(cli({"classify", sample("with_L.json")}).out)["S_cris"] == false);
  CHECK(cli({"classify", sample("empty.json")}).code == kUsage);
  CHECK(cli({"classify", temp("broken.json", "{\"parameter\": 3")}).code == kUsage);
  CHECK(cli({"classify"}).code == kUsage);
  CHECK(cli({}).code == kUsage);
  CHECK(cli({"--p", "4", "classify", sample("crystalline.json")}).code == kUsage);
}

TEST_CASE("act") {
  auto r = cli({"act", sample("lower5.json"), sample("z_squared.json"), sample("character_k3.json")});
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["series"]["coefficients"] == json({"25", "-10", "1"}));
  CHECK(r.err.find("val_C before: 2") != std::string::npos);

  auto id = cli({"act", sample("identity.json"), sample("z_squared.json"), sample("character_k3.json")});
  REQUIRE(id.code == 0);
  auto again = cli({"act", sample("identity.json"), temp("id.json", id.out), sample("character_k3.json")});
  CHECK(again.out == id.out);

  CHECK(cli({"act", sample("outside_I1.json"), sample("z_squared.json"), sample("character_k3.json")}).code ==
        kDomain);
  // z^2 lives on 5 Z_5 but lower(1) is only in G(0).
  auto lower1 = temp("lower1.json", R"({"matrix": {"a": "1", "b": "0", "c": "1", "d": "1"}})");
  CHECK(cli({"act", lower1, sample("z_squared.json"), sample("character_k3.json")}).code == kDomain);
  auto bad_chi = temp("bad_chi.json", R"({"character": {"alpha": "5", "beta": "5", "k": 3}})");
  CHECK(cli({"act", sample("identity.json"), sample("z_squared.json"), bad_chi}).code == kDomain);
  auto other_ctx = temp("ctx7.json", R"({"context": {"p": 7, "precision": 30, "degree": 32, "slack": 4},
                                        "matrix": {"a": "1", "b": "0", "c": "0", "d": "1"}})");
  CHECK(cli({"act", other_ctx, sample("z_squared.json"), sample("character_k3.json")}).code == kMismatch);

  auto pw = cli({"act", sample("lower5.json"), sample("step_function.json"), sample("character_k3.json")});
  CHECK(pw.code == 0);
  CHECK(json::parse(pw.out).contains("function"));
}

TEST_CASE("analytic-level and verify-bounds") {
  auto r = cli({"analytic-level", sample("step_function.json")});
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["least_level"] == 1);
  CHECK(j["levels"][0]["reexpansion"] == false);
  CHECK(j["levels"][0]["orbit"] == false);

  auto ok = cli({"verify-bounds", sample("z_squared.json")});
  CHECK(ok.code == 0);
  CHECK(json::parse(ok.out)["entries"].size() == 4 * 65);
  auto zero = cli({"verify-bounds", sample("zero_series.json")});
  CHECK(zero.code == 0);
  CHECK(json::parse(zero.out)["entries"][0]["margin"] == "inf");
  auto bad = cli({"verify-bounds", sample("z_squared.json"), "--corrupt-index", "3"});
  CHECK(bad.code == kVerificationFailed);
  CHECK(bad.err.find("index 3") != std::string::npos);
  CHECK(cli({"verify-bounds", sample("z_squared.json"), "--corrupt-index", "3", "--corrupt-family", "nope"}).code ==
        kUsage);
  CHECK(cli({"verify-bounds", sample("z_squared.json"), "--m", "0"}).code == kDomain);
}

TEST_CASE("witness and cokernel-eq") {
  auto w = cli({"witness", "--alpha", "10", "--beta", "5", "--k", "3"});
  REQUIRE(w.code == 0);
  const auto wpath = temp("witness.json", w.out);
  auto same = cli({"cokernel-eq", wpath, wpath});
  CHECK(json::parse(same.out)["equal"] == true);

  auto j = json::parse(w.out);
  for (const char* part : {"alpha", "beta"})
    for (const char* cell : {"identity", "w0"})
      j["cokernel"][part][cell] = to_json(PiecewiseFunction::zero(PadicContext::create()));
  const auto zpath = temp("zero_class.json", j.dump());
  CHECK(json::parse(cli({"cokernel-eq", wpath, zpath}).out)["equal"] == false);

  auto w2 = cli({"witness", "--alpha", "5", "--beta", "1", "--k", "2", "--policy", "structural"});
  REQUIRE(w2.code == 0);
  CHECK(cli({"cokernel-eq", wpath, temp("w2.json", w2.out)}).code == kMismatch);
  CHECK(cli({"witness", "--alpha", "5", "--beta", "1", "--k", "2"}).code == kDomain);
  CHECK(cli({"witness", "--alpha", "10", "--beta", "5", "--k", "3", "--m", "1"}).code == kDomain);
}

TEST_CASE("selftest determinism and formats") {
  auto a = cli({"--seed", "9", "--count", "3", "selftest"});
  auto b = cli({"--seed", "9", "--count", "3", "selftest"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(json::parse(a.out)["suites"].size() == selftest_suites().size());
  auto c = cli({"--seed", "10", "--count", "3", "selftest"});
  CHECK(c.code == 0);
  CHECK(cli({"--count", "0", "selftest"}).code == kUsage);
  CHECK(cli({"selftest", "--suite", "bogus"}).code == kUsage);
  auto csv = cli({"--format", "csv", "--count", "1", "selftest", "--suite", "galois.filtration"});
  CHECK(csv.out.find("# suites") != std::string::npos);
  auto text = cli({"--format", "text", "--count", "1", "selftest", "--suite", "galois.filtration"});
  CHECK(text.out.find("ok: true") != std::string::npos);
  CHECK(cli({"--format", "xml", "selftest"}).code == kUsage);
}

}  // TEST_SUITE
