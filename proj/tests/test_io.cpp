#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>

#include "test_util.hpp"

using namespace stokeslab;
using namespace testutil;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("disc field JSON round trip is bit-exact") {
  auto g = DiscGrid::make(24, 5);
  std::mt19937 rng(99);
  DiscField f = random_smooth_field(g, rng);
  DiscField back = field_from_json(field_to_json(f), g);
  REQUIRE(max_abs(f - back) == 0.0);

  DiscField v = grad_perp(f);
  DiscField vb = field_from_json(field_to_json(v));  // grid rebuilt from file
  REQUIRE(vb.is_scalar() == false);
  REQUIRE(max_abs(v - vb) == 0.0);
}

TEST_CASE("field JSON rejects mismatched grids and malformed modes") {
  auto g = DiscGrid::make(24, 5);
  DiscField f = DiscField::scalar(g);
  nlohmann::json j = field_to_json(f);
  auto g2 = DiscGrid::make(32, 5);
  REQUIRE_THROWS_AS(field_from_json(j, g2), std::runtime_error);
  j["n_theta"] = 2;
  nlohmann::json mode = {{"m", 4},
                         {"re", std::vector<double>(24, 0.0)},
                         {"im", std::vector<double>(24, 0.0)}};
  j["components"][0].push_back(mode);
  REQUIRE_THROWS_AS(field_from_json(j), std::runtime_error);
}

TEST_CASE("space-time field JSON round trip") {
  auto g = DiscGrid::make(16, 3);
  SpaceTimeGrid tg(0.0, 0.5, 4);
  SpaceTimeField u(tg, g, FieldRank::Scalar);
  std::mt19937 rng(3);
  for (int k = 0; k < u.n_slices(); ++k) u.slice(k) = random_smooth_field(g, rng);
  SpaceTimeField back = spacetime_field_from_json(spacetime_field_to_json(u), g);
  REQUIRE(back.tgrid() == tg);
  for (int k = 0; k < u.n_slices(); ++k)
    REQUIRE(max_abs(u.slice(k) - back.slice(k)) == 0.0);
}

TEST_CASE("boundary trace JSON round trip") {
  BoundaryTrace b(6);
  b.mode_ref(0) = 1.25;
  b.mode_ref(3) = Complex(0.5, -0.75);
  b.mode_ref(-3) = Complex(0.5, 0.75);
  BoundaryTrace back = trace_from_json(trace_to_json(b));
  REQUIRE(back.n_theta() == 6);
  REQUIRE((back.coeffs() - b.coeffs()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("save_json / load_json file round trip") {
  auto g = DiscGrid::make(12, 2);
  DiscField f = DiscField::scalar(g);
  f.add_mode(1, sample(*g, Poly{1, {0.5, -0.25}}));
  const std::string path = "/tmp/stokeslab_io_field.json";
  save_json(field_to_json(f), path);
  DiscField back = field_from_json(load_json(path), g);
  REQUIRE(max_abs(f - back) == 0.0);
  REQUIRE_THROWS_AS(load_json("/tmp/stokeslab_io_missing.json"), std::runtime_error);
  std::remove(path.c_str());
}

TEST_CASE("CSV writer: header, deterministic bytes, metadata sidecar") {
  const std::string path = "/tmp/stokeslab_io_test.csv";
  auto emit = [&]() {
    CsvWriter w(path, {"n", "value", "error"});
    w.set_meta("n_r", "64");
    w.set_meta("seed", "1234");
    w.add_row({1.0, 1.0 / 3.0, 1e-12});
    w.add_row({2.0, 0.1234567890123456789, 2.5e-300});
    w.write();
  };
  emit();
  std::string first = slurp(path);
  std::string first_meta = slurp(path + ".meta");
  emit();
  REQUIRE(slurp(path) == first);  // bit-identical on rewrite
  REQUIRE(slurp(path + ".meta") == first_meta);

  REQUIRE(first.substr(0, first.find('\n')) == "n,value,error");
  REQUIRE(first_meta.find("n_r: 64") != std::string::npos);
  REQUIRE(first_meta.find("seed: 1234") != std::string::npos);

  CsvWriter bad(path, {"a", "b"});
  REQUIRE_THROWS_AS(bad.add_row({1.0}), std::invalid_argument);
  std::remove(path.c_str());
  std::remove((path + ".meta").c_str());
}

TEST_CASE("norm report CSV: key/value layout with sidecar") {
  NormReport rep;
  rep.set("norm_f", 2.5);
  rep.set("estimate_ratio", 0.75);
  const std::string path = "/tmp/stokeslab_io_report.csv";
  save_norm_report(rep, path, {{"config", "test"}});
  std::string body = slurp(path);
  REQUIRE(body.substr(0, body.find('\n')) == "key,value");
  REQUIRE(body.find("norm_f,2.5") != std::string::npos);
  REQUIRE(slurp(path + ".meta").find("config: test") != std::string::npos);
  std::remove(path.c_str());
  std::remove((path + ".meta").c_str());
}
