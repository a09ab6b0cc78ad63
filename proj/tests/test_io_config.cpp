#include <filesystem>
#include <fstream>
#include <string>
#include <unistd.h>

#include <doctest.h>

#include "cslbound/config.hpp"
#include "cslbound/errors.hpp"
#include "cslbound/io.hpp"
#include "cslbound/units.hpp"

using namespace cslbound;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("cslbound_unit_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir / name;
}

fs::path write_file(const std::string& name, const std::string& text) {
  const auto p = scratch(name);
  std::ofstream(p) << text;
  return p;
}

std::string message_of(auto&& f) {
  try {
    f();
  } catch (const std::exception& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_SUITE("io_config") {

TEST_CASE("quantities need a unit of the right dimension") {
  CHECK(parse_quantity("0.28mK", Dimension::temperature) == 0.28e-3);
  CHECK(parse_quantity("1.18 mK", Dimension::temperature) == 1.18e-3);
  CHECK(parse_quantity("2.25 um", Dimension::length) == 2.25e-6);
  CHECK(parse_quantity("2.33 g/cm^3", Dimension::density) == doctest::Approx(2330.0));
  CHECK(parse_quantity("2.2e-17 1/s", Dimension::rate) == 2.2e-17);
  CHECK(parse_quantity("3.084 kHz", Dimension::frequency) == doctest::Approx(3084.0));
  CHECK(parse_quantity("-1.09mK", Dimension::temperature) == -1.09e-3);
  CHECK_THROWS_AS(parse_quantity("0.28", Dimension::temperature), UnitError);
  CHECK_THROWS_AS(parse_quantity("0.28 m", Dimension::temperature), UnitError);
  CHECK_THROWS_AS(parse_quantity("mK", Dimension::temperature), UnitError);
  CHECK(message_of([] { parse_quantity("5", Dimension::length); }).find("um") != std::string::npos);
}

TEST_CASE("doubles round-trip through text") {
  for (double v : {0.1, 1.0 / 3.0, 2.2e-17, -7.25e300, 0.0})
    CHECK(std::stod(format_double(v)) == v);
  CHECK(format_double(1.0) == "1");
}

TEST_CASE("atomic write replaces the file and creates directories") {
  const auto p = scratch("nested/dir/out.txt");
  atomic_write(p, "first");
  atomic_write(p, "second");
  CHECK(read_text_file(p) == "second");
  for (const auto& e : fs::directory_iterator(p.parent_path())) CHECK(e.path().filename() == "out.txt");
}

TEST_CASE("temperature CSV") {
  const auto ok = write_file("t_ok.csv", "# T_K,Tm_K,sigma_K\n0.03,0.031,0.001\n0.05,0.052,0.002\n\n0.1,0.1,0.003\n");
  const auto s = load_temperature_csv(ok, 0.02);
  CHECK(s.points.size() == 3);
  CHECK(s.points[1].T_m == 0.052);
  CHECK(s.cut_low == 0.02);
  const auto bad = write_file("t_bad.csv", "# T_K,Tm_K,sigma_K\n0.03,0.031,0.001\n0.05,0.052,-0.002\n");
  CHECK_THROWS_AS(load_temperature_csv(bad), DataError);
  CHECK(message_of([&] { load_temperature_csv(bad); }).find(":3:") != std::string::npos);
  const auto nan = write_file("t_nan.csv", "# T_K,Tm_K,sigma_K\n0.03,nan,0.001\n");
  CHECK(message_of([&] { load_temperature_csv(nan); }).find(":2:") != std::string::npos);
  const auto header = write_file("t_hdr.csv", "# T,Tm,sigma\n0.03,0.03,0.001\n");
  CHECK_THROWS_AS(load_temperature_csv(header), DataError);
  const auto empty = write_file("t_empty.csv", "");
  CHECK_THROWS_AS(load_temperature_csv(empty), InsufficientDataError);
  CHECK_THROWS_AS(load_temperature_csv(scratch("missing.csv")), DataError);
  const auto round = write_file("t_round.csv", format_temperature_csv(s));
  CHECK(load_temperature_csv(round, 0.02).points.size() == 3);
}

TEST_CASE("spectrum CSV round trip and calibration scale") {
  SpectrumRecord r;
  r.freqs = Eigen::ArrayXd::LinSpaced(10, 100.0, 109.0);
  r.psd = Eigen::ArrayXd::LinSpaced(10, 1e-24, 1e-23);
  r.n_averages = 5;
  const auto p = write_file("s.csv", format_spectrum_csv(r));
  const auto back = load_spectrum_csv(p, 5, 2.0);
  CHECK(back.n_averages == 5);
  CHECK((back.freqs == r.freqs).all());
  CHECK(back.psd[3] == doctest::Approx(2.0 * r.psd[3]));
}

TEST_CASE("config parsing") {
  const auto cfg = parse_run_config(R"({
    "device": {"cantilever": {"length": "120 um"}, "sphere": {"radius": "2 um"}},
    "oscillator": {"Q": 1000, "T_bath": "20 mK"},
    "csl": {"r_C": "1 um", "r_C_grid": {"points": 11}},
    "exclusion": {"xray_anchor": {"lambda": "1e-11 1/s"}},
    "seed": 9
  })");
  CHECK(cfg.device.cantilever.L == doctest::Approx(120e-6));
  CHECK(cfg.device.cantilever.w == doctest::Approx(5e-6));
  CHECK(cfg.device.sphere.radius == doctest::Approx(2e-6));
  CHECK(cfg.device.Q == 1000.0);
  CHECK(cfg.device.T_bath == doctest::Approx(0.02));
  CHECK(cfg.r_C == doctest::Approx(1e-6));
  CHECK(cfg.grid.points == 11);
  CHECK(*cfg.xray_anchor_lambda == 1e-11);
  CHECK(cfg.seed == 9);
  const auto dev = resolve_device(cfg);
  CHECK(dev.mode.has_value());
  CHECK(dev.geometry.R == doctest::Approx(2e-6));
}

TEST_CASE("explicit geometry") {
  const auto cfg = parse_run_config(R"({
    "geometry": {"R1": "20 um", "R2": "5 um", "R3": "0.1 um", "R": "2 um",
                 "rho_c": "2330 kg/m^3", "rho_s": "7430 kg/m^3"},
    "oscillator": {"mass": "0.4 ng"}
  })");
  const auto dev = resolve_device(cfg);
  CHECK_FALSE(dev.mode.has_value());
  CHECK(dev.geometry.R1 == doctest::Approx(20e-6));
  CHECK(dev.oscillator.m == doctest::Approx(0.4e-12));
  CHECK_THROWS_AS(resolve_device(parse_run_config(R"({"geometry": {"R1": "20 um", "R2": "5 um", "R3": "0.1 um",
      "R": "2 um", "rho_c": "2330 kg/m^3", "rho_s": "7430 kg/m^3"}})")), ConfigError);
}

TEST_CASE("config errors") {
  CHECK_THROWS_AS(parse_run_config(R"({"oscilator": {}})"), ConfigError);
  CHECK(message_of([] { parse_run_config(R"({"csl": {"r_c": "1 um"}})"); }).find("csl.r_c") != std::string::npos);
  CHECK_THROWS_AS(parse_run_config(R"({"csl": {"r_C": 1e-7}})"), UnitError);
  CHECK_THROWS_AS(parse_run_config(R"({"csl": {"r_C": "1e-7 K"}})"), UnitError);
  CHECK_THROWS_AS(parse_run_config(R"({"oscillator": {"Q": "many"}})"), ConfigError);
  CHECK_THROWS_AS(parse_run_config("{not json"), ConfigError);
  CHECK_THROWS_AS(parse_run_config(R"({"analysis": {"confidence": 1.5}})"), ConfigError);
  const auto missing = scratch("nope.json");
  CHECK(message_of([&] { load_run_config(missing); }).find(missing.string()) != std::string::npos);
}

TEST_CASE("shipped reference config matches the built-in defaults") {
  const auto cfg = load_run_config(fs::path(CSLBOUND_CONFIG_DIR) / "reference_device.json");
  const auto a = resolve_device(cfg);
  const auto b = resolve_device(RunConfig{});
  CHECK(a.geometry.R1 == b.geometry.R1);
  CHECK(a.oscillator.m == b.oscillator.m);
  CHECK(cfg.deltaT_max == RunConfig{}.deltaT_max);
}

}
