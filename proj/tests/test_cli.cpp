#include <doctest.h>

#include "qvac/cli.hpp"
#include "qvac/constants.hpp"
#include "qvac/report.hpp"

#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

using namespace qvac;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "qvac");
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

fs::path scratch_dir() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / ("qvac-cli-test-" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

fs::path write_file(const std::string& name, const std::string& contents) {
  const auto p = scratch_dir() / name;
  std::ofstream(p, std::ios::binary) << contents;
  return p;
}

std::vector<std::string> split_lines(const std::string& text, const std::string& eol) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    const auto end = text.find(eol, start);
    if (end == std::string::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, end - start));
    start = end + eol.size();
  }
  return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream in(line);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(item);
  return out;
}

std::string field_value(const std::string& report, const std::string& key) {
  const auto at = report.find(key + ": ");
  REQUIRE(at != std::string::npos);
  const auto begin = at + key.size() + 2;
  return report.substr(begin, report.find('\n', begin) - begin);
}

}  // namespace

TEST_CASE("exit-code contract") {
  struct Case {
    std::vector<std::string> args;
    int code;
  };
  const std::vector<Case> cases = {
      {{"estimate"}, kExitOk},
      {{"estimate", "--gap-ratio", "2", "--convention", "sphere"}, kExitOk},
      {{"sweep", "--count", "4"}, kExitOk},
      {{"species"}, kExitOk},
      {{"check-dimensions"}, kExitOk},
      {{"constants", "--derived"}, kExitOk},
      {{"--help"}, kExitOk},
      {{}, kExitUsage},
      {{"frobnicate"}, kExitUsage},
      {{"estimate", "--bogus"}, kExitUsage},
      {{"estimate", "--gap-ratio", "0"}, kExitUsage},
      {{"estimate", "--gap-ratio", "-1"}, kExitUsage},
      {{"estimate", "--gap-ratio", "two"}, kExitUsage},
      {{"estimate", "--convention", "dodecahedron"}, kExitUsage},
      {{"estimate", "--field", "1e6 V"}, kExitUsage},
      {{"estimate", "--field", "1e6 furlong"}, kExitUsage},
      {{"--format", "xml", "estimate"}, kExitUsage},
      {{"--units", "planck", "estimate"}, kExitUsage},
      {{"sweep", "--conventions", ""}, kExitUsage},
      {{"sweep", "--count", "1"}, kExitUsage},
      {{"sweep", "--kappa-min", "0"}, kExitUsage},
      {{"sweep", "--g-factors", "x"}, kExitUsage},
      {{"species", "--gap-ratio", "0"}, kExitUsage},
      {{"estimate", "--field", "2e18 V/m"}, kExitRuntime},
      {{"estimate", "--frequency", "1e30 Hz"}, kExitRuntime},
      {{"--constants", "/nonexistent/constants.tsv", "estimate"}, kExitRuntime},
      {{"--species", "/nonexistent/species.tsv", "species"}, kExitRuntime},
      {{"--out", "/nonexistent/dir/out.csv", "sweep", "--count", "2"}, kExitRuntime},
  };
  for (const auto& c : cases) {
    std::string joined;
    for (const auto& a : c.args) joined += a + " ";
    CAPTURE(joined);
    const Run r = run(c.args);
    CHECK(r.code == c.code);
    if (c.code == kExitUsage) CHECK_FALSE(r.err.empty());
  }
}

TEST_CASE("usage errors name the offending flag") {
  CHECK(run({"estimate", "--gap-ratio", "0"}).err.find("--gap-ratio") != std::string::npos);
  CHECK(run({"sweep", "--conventions", ""}).err.find("--conventions") != std::string::npos);
  const Run io = run({"--out", "/nonexistent/dir/out.csv", "sweep", "--count", "2"});
  CHECK(io.err.find("/nonexistent/dir/out.csv") != std::string::npos);
}

TEST_CASE("estimate rows") {
  const Run cube = run({"estimate", "--gap-ratio", "2", "--convention", "cube"});
  REQUIRE(cube.code == 0);
  const auto lines = split_lines(cube.out, "\r\n");
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == kCsvHeader);
  const auto fields = split_csv(lines[1]);
  REQUIRE(fields.size() == 10);
  CHECK(fields[1] == "cube");
  CHECK(std::stod(fields[3]) == doctest::Approx(1.62e-12).epsilon(5e-3));
  CHECK(std::stod(fields[6]) == doctest::Approx(0.1834).epsilon(1e-3));
  CHECK(cube.err.find("around ten") != std::string::npos);
  CHECK(cube.err.find("1/10") != std::string::npos);

  const Run sphere = run({"estimate", "--gap-ratio", "2", "--convention", "sphere"});
  const auto sfields = split_csv(split_lines(sphere.out, "\r\n")[1]);
  CHECK(std::stod(sfields[9]) == doctest::Approx(90.3).epsilon(5e-3));

  const Run weak = run({"estimate", "--field", "5e17 V/m"});
  CHECK(weak.code == 0);
  CHECK(weak.err.find("weak-field") != std::string::npos);
  CHECK(weak.out.find("weak-field") == std::string::npos);
}

TEST_CASE("gaussian output converts permittivity and permeability") {
  const Run g = run({"--units", "gaussian", "estimate"});
  REQUIRE(g.code == 0);
  const auto fields = split_csv(split_lines(g.out, "\r\n")[1]);
  const double ratio = std::stod(fields[6]);
  CHECK(std::stod(fields[3]) == doctest::Approx(ratio / (4 * std::numbers::pi)).epsilon(1e-9));
  CHECK(std::stod(fields[4]) * std::stod(fields[3]) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(g.err.find("'1'") != std::string::npos);
}

TEST_CASE("sweep at two gap ratios") {
  const Run r = run({"sweep", "--kappa-min", "1", "--kappa-max", "2", "--count", "2",
                     "--conventions", "cube"});
  REQUIRE(r.code == 0);
  const auto lines = split_lines(r.out, "\r\n");
  REQUIRE(lines.size() == 3);
  CHECK(std::stod(split_csv(lines[1])[6]) == doctest::Approx(0.0917).epsilon(1e-3));
  CHECK(std::stod(split_csv(lines[2])[6]) == doctest::Approx(0.1834).epsilon(1e-3));

  const Run stepped = run({"sweep", "--kappa-min", "1", "--kappa-max", "2", "--step", "0.25",
                           "--conventions", "cube"});
  CHECK(split_lines(stepped.out, "\r\n").size() == 6);
}

TEST_CASE("sweep row order and closure identity") {
  const Run r = run({"sweep", "--count", "5", "--conventions", "cube,sphere,compton",
                     "--g-factors", "1,2"});
  REQUIRE(r.code == 0);
  const auto lines = split_lines(r.out, "\r\n");
  REQUIRE(lines.size() == 1 + 5 * 3 * 2);
  double last_kappa = 0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = split_csv(lines[i]);
    const std::size_t k = (i - 1) / 6, conv = ((i - 1) / 2) % 3, gi = (i - 1) % 2;
    CHECK(f[1] == std::vector<std::string>{"cube", "sphere", "compton"}[conv]);
    CHECK(std::stod(f[2]) == (gi == 0 ? 1.0 : 2.0));
    const double kappa = std::stod(f[0]);
    if (k > 0 && conv == 0 && gi == 0) CHECK(kappa > last_kappa);
    last_kappa = kappa;
    if (f[1] != "compton") {
      CHECK(std::stod(f[6]) * std::stod(f[7]) == doctest::Approx(1.0).epsilon(1e-11));
    }
  }
}

TEST_CASE("json output parses") {
  const Run r = run({"--format", "json", "sweep", "--count", "3"});
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  REQUIRE(doc.is_array());
  CHECK(doc.size() == 6);
  for (const auto& key : split_csv(std::string(kCsvHeader))) CHECK(doc[0].contains(key));
  CHECK(doc[1]["convention"] == "sphere");
}

TEST_CASE("sweep output is deterministic") {
  for (const std::string fmt : {"csv", "svg", "json"}) {
    const auto a = scratch_dir() / ("a." + fmt);
    const auto b = scratch_dir() / ("b." + fmt);
    REQUIRE(run({"--format", fmt, "--out", a.string(), "sweep", "--conventions",
                 "cube,sphere,half-compton", "--g-factors", "1,2"}).code == 0);
    REQUIRE(run({"--format", fmt, "--out", b.string(), "sweep", "--conventions",
                 "cube,sphere,half-compton", "--g-factors", "1,2"}).code == 0);
    CHECK(!slurp(a).empty());
    CHECK(slurp(a) == slurp(b));
  }
}

TEST_CASE("svg chart is well-formed with one polyline per convention") {
  const Run r = run({"--format", "svg", "sweep", "--count", "8", "--conventions",
                     "cube,sphere,compton"});
  REQUIRE(r.code == 0);
  const std::string& svg = r.out;
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("version=\"1.1\"") != std::string::npos);
  CHECK(svg.find("width=") != std::string::npos);
  CHECK(svg.find("height=") != std::string::npos);

  std::size_t polylines = 0;
  for (auto at = svg.find("<polyline"); at != std::string::npos; at = svg.find("<polyline", at + 1)) {
    ++polylines;
  }
  CHECK(polylines == 3);

  // Tag balance: every opening tag is closed or self-closing.
  std::vector<std::string> stack;
  std::size_t i = svg.find("<svg");
  while ((i = svg.find('<', i)) != std::string::npos) {
    const auto end = svg.find('>', i);
    REQUIRE(end != std::string::npos);
    const std::string tag = svg.substr(i + 1, end - i - 1);
    if (tag.starts_with("/")) {
      const auto name = tag.substr(1);
      REQUIRE_FALSE(stack.empty());
      CHECK(stack.back() == name);
      stack.pop_back();
    } else if (!tag.ends_with("/") && !tag.starts_with("!") && !tag.starts_with("?")) {
      stack.push_back(tag.substr(0, tag.find_first_of(" \n")));
    }
    i = end;
  }
  CHECK(stack.empty());
}

TEST_CASE("species report") {
  const Run r = run({"species", "--gap-ratio", "2"});
  REQUIRE(r.code == 0);
  CHECK(field_value(r.out, "charge_weighted_sum").starts_with("8 "));
  CHECK(std::stod(field_value(r.out, "total_permittivity")) ==
        doctest::Approx(1.299e-11).epsilon(1e-3));
  CHECK(std::stod(field_value(r.out, "required_count_sphere")) ==
        doctest::Approx(90.3).epsilon(5e-3));

  const auto electron = write_file("electron.tsv", "electron\t-1\t1\t0.5109989461\n");
  const Run one = run({"--species", electron.string(), "species", "--gap-ratio", "2"});
  REQUIRE(one.code == 0);
  CHECK(std::stod(field_value(one.out, "total_permittivity")) ==
        doctest::Approx(1.62e-12).epsilon(5e-3));

  const auto empty = write_file("empty.tsv", "");
  const Run none = run({"--species", empty.string(), "species"});
  REQUIRE(none.code == 0);
  CHECK(field_value(none.out, "charge_weighted_sum").starts_with("0 "));
  CHECK(none.err.find("NoSpecies") != std::string::npos);

  const auto bad = write_file("bad.tsv", "photon\t0\t1\n");
  CHECK(run({"--species", bad.string(), "species"}).code == kExitRuntime);
}

TEST_CASE("check-dimensions") {
  const Run ok = run({"check-dimensions"});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("FAIL") == std::string::npos);
  CHECK(ok.out.find("26/26") != std::string::npos);

  std::string text = slurp(default_constants_path());
  const auto at = text.find("A s / (V m)");
  REQUIRE(at != std::string::npos);
  text.replace(at, std::string("A s / (V m)").size(), "V/m");
  const auto corrupt = write_file("corrupt.tsv", text);
  const Run bad = run({"--constants", corrupt.string(), "check-dimensions"});
  CHECK(bad.code == kExitRuntime);
  CHECK(bad.out.find("FAIL") != std::string::npos);
  CHECK(bad.out.find("FAIL electric-displacement") != std::string::npos);
}

TEST_CASE("constants listing") {
  const Run plain = run({"constants"});
  REQUIRE(plain.code == 0);
  CHECK(plain.out.starts_with("# codata 2014\n"));
  CHECK(plain.out.find("\neps0\t8.85418781762e-12\tA s / (V m)") != std::string::npos);
  CHECK(plain.out.find("\nalpha\t") == std::string::npos);

  const Run derived = run({"constants", "--derived"});
  CHECK(derived.out.find("\nalpha\t7.29735256717e-03") != std::string::npos);
  CHECK(derived.out.find("\nE_S\t1.32328546607e+18") != std::string::npos);
  CHECK(derived.out.find("\nlambda_c\t3.86159267") != std::string::npos);
}
