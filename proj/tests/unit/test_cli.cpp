#include <doctest.h>

#include <bit>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "skew/errors.hpp"
#include "skew/fuzz.hpp"
#include "skew/metric_adjusted.hpp"
#include "skew/skew_information.hpp"
#include "skew_cli/cli.hpp"
#include "skew_cli/json_io.hpp"
#include "support/matrices.hpp"

using namespace skew;
using namespace skew::cli;
using skew::testing::sigma_x;
using skew::testing::sigma_y;
using skew::testing::third_two_thirds;

namespace {

const std::string kFixtures = SKEW_FIXTURE_DIR;

struct Outcome {
  int code;
  std::string out;
  std::string err;

  json doc() const { return json::parse(out); }
  json error() const { return json::parse(err).at("error"); }
};

Outcome invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

// A problem file in the temp directory, removed with the object.
class TempInput {
 public:
  explicit TempInput(const json& doc) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("skew_cli_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++) + ".json");
    std::ofstream(path_) << doc.dump();
  }
  ~TempInput() { std::filesystem::remove(path_); }
  std::string path() const { return path_.string(); }

 private:
  std::filesystem::path path_;
};

json equality_doc() {
  return {{"rho", matrix_to_json(third_two_thirds())}, {"A", matrix_to_json(sigma_x())}, {"B", matrix_to_json(sigma_y())}};
}

bool same_bits(double x, double y) { return std::bit_cast<std::uint64_t>(x) == std::bit_cast<std::uint64_t>(y); }

}  // namespace

TEST_SUITE("cli exit codes and golden outputs") {
  TEST_CASE("reproduce one fixture") {
    const auto r = invoke({"reproduce", "--id", "remark_2_1"});
    CHECK(r.code == kOk);
    const auto d = r.doc();
    REQUIRE(d["reproductions"].size() == 1);
    const auto& rep = d["reproductions"][0];
    CHECK(rep["id"] == "remark_2_1");
    CHECK(rep["inequality"] == "THM2");
    CHECK(rep["computed"].get<double>() == doctest::Approx(-0.28332).epsilon(5e-5 / 0.28332));
    CHECK(rep["reference"].get<double>() == -0.28332);
    CHECK(rep["matches"] == true);
    CHECK(rep["result"]["in_region"] == false);
    CHECK(rep["result"]["parameters"]["alpha"] == 0.1);
    CHECK(d["all_match"] == true);
  }

  TEST_CASE("reproduce all") {
    const auto r = invoke({"reproduce"});
    CHECK(r.code == kOk);
    const auto d = r.doc();
    REQUIRE(d["reproductions"].size() == 3);
    CHECK(d["reproductions"][1]["id"] == "remark_2_2");
    CHECK(d["reproductions"][1]["computed"].get<double>() == doctest::Approx(-0.0548142).epsilon(5e-7 / 0.0548142));
    CHECK(std::abs(d["reproductions"][2]["computed"].get<double>()) < 1e-12);
    CHECK(invoke({"reproduce", "--id", "nope"}).code == kInputError);
  }

  TEST_CASE("check the equality instance") {
    const auto r = invoke({"check", "--input", kFixtures + "/equality_wy.json", "--id", "thm2"});
    CHECK(r.code == kOk);
    const auto d = r.doc();
    CHECK(d["id"] == "THM2");
    CHECK(std::abs(d["margin"].get<double>()) < 1e-12);
    CHECK(d["holds"] == true);
    CHECK(d["in_region"] == true);
    CHECK(d["parameters"]["alpha"] == 0.5);
    CHECK(d["input_digest"].get<std::string>().size() == 16);
  }

  TEST_CASE("check all") {
    const auto r = invoke({"check", "--input", kFixtures + "/equality_wy.json", "--id", "all"});
    CHECK(r.code == kOk);
    const auto d = r.doc();
    CHECK(d["results"].size() == 14);
    CHECK(d["skipped"].empty());
    CHECK(d["violations"] == 0);
    // A singular state cannot take the metric-adjusted ids.
    json doc = equality_doc();
    doc["rho"] = matrix_to_json(Matrix{{1.0, 0.0}, {0.0, 0.0}});
    const TempInput pure(doc);
    const auto s = invoke({"check", "--input", pure.path(), "--id", "all"});
    CHECK(s.code == kOk);
    CHECK(s.doc()["skipped"].size() == 3);
    CHECK(invoke({"check", "--input", pure.path(), "--id", "thm4"}).code == kInputError);
    CHECK(invoke({"check", "--input", pure.path(), "--id", "thm4"}).error()["invariant"] == "invertible");
  }

  TEST_CASE("in-region failure exits 1") {
    // A negative tolerance demands a strict margin, which an equality case cannot meet.
    const auto r = invoke({"check", "--input", kFixtures + "/equality_wy.json", "--id", "thm2", "--tol", "-1e-6"});
    CHECK(r.code == kViolation);
    CHECK(r.doc()["holds"] == false);
    CHECK(invoke({"check", "--input", kFixtures + "/equality_wy.json", "--id", "all", "--tol", "-1e-6"}).code ==
          kViolation);
    // Out of region a failure is reported but is not a violation.
    const auto out = invoke({"check", "--input", kFixtures + "/remark_2_1.json", "--id", "thm2"});
    CHECK(out.code == kOk);
    CHECK(out.doc()["holds"] == false);
    CHECK(out.doc()["margin"].get<double>() == doctest::Approx(-0.283320211527).epsilon(1e-10));
  }

  TEST_CASE("command-line parameters override the file") {
    const auto r = invoke({"check", "--input", kFixtures + "/remark_2_1.json", "--id", "thm2", "--alpha", "0.9"});
    CHECK(r.code == kOk);
    CHECK(r.doc()["parameters"]["alpha"] == 0.9);
    CHECK(r.doc()["in_region"] == true);
    const auto f = invoke({"check", "--input", kFixtures + "/equality_wy.json", "--id", "thm4", "--f", "WYD:0.3"});
    CHECK(f.doc()["parameters"]["f"]["name"] == "WYD:0.3");
    CHECK(invoke({"check", "--input", kFixtures + "/equality_wy.json", "--id", "thm2", "--alpha", "1.5"}).code ==
          kInputError);
  }

  TEST_CASE("compute rejects a bad trace") {
    const auto r = invoke({"compute", "--input", kFixtures + "/bad_trace.json"});
    CHECK(r.code == kInputError);
    CHECK(r.out.empty());
    const auto e = r.error();
    CHECK(e["type"] == "ValidationError");
    CHECK(e["invariant"] == "trace");
    CHECK(e["message"].get<std::string>().rfind("rho:", 0) == 0);
  }

  TEST_CASE("usage errors exit 2") {
    CHECK(invoke({}).code == kInputError);
    CHECK(invoke({"frobnicate"}).code == kInputError);
    CHECK(invoke({"fuzz", "--trials", "10", "--dim", "2", "--id", "thm2"}).code == kInputError);
    CHECK(invoke({"fuzz", "--trials", "10", "--dim", "2", "--id", "thm2"}).error()["type"] == "UsageError");
    CHECK(invoke({"check", "--input", kFixtures + "/equality_wy.json"}).code == kInputError);
    CHECK(invoke({"check", "--input", kFixtures + "/equality_wy.json", "--id", "thm9"}).code == kInputError);
    CHECK(invoke({"compute", "--input", "/nonexistent/x.json"}).code == kInputError);
    CHECK(invoke({"scan", "--input", kFixtures + "/equality_wy.json", "--id", "thm2", "--alpha-grid", "0:1:3",
                  "--format", "xml"})
              .code == kInputError);
    CHECK(invoke({"fuzz", "--seed", "1", "--dim", "1"}).code == kInputError);
    CHECK(invoke({"fuzz", "--seed", "1", "--alpha-grid", "0:2:3"}).code == kInputError);
    CHECK(invoke({"fuzz", "--seed", "1", "--dim", "3", "--pin-fixture", "remark_2_1"}).code == kInputError);
  }

  TEST_CASE("help exits 0") {
    const auto r = invoke({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("fuzz") != std::string::npos);
  }
}

TEST_SUITE("cli compute") {
  TEST_CASE("values match the library bit for bit") {
    const auto r = invoke({"compute", "--input", kFixtures + "/equality_wy.json", "--alpha", "0.3"});
    REQUIRE(r.code == kOk);
    const auto d = r.doc();
    const DensityMatrix rho(third_two_thirds());
    const Observable a{sigma_x()}, b{sigma_y()};
    CHECK(d["dimension"] == 2);
    CHECK(d["parameters"]["alpha"] == 0.3);
    CHECK(d["parameters"]["gamma"] == 0.5);
    CHECK(d["parameters"]["f"]["name"] == "WY");
    CHECK(same_bits(d["A"]["skew_information"].get<double>(), wyd_skew_information(rho, a, 0.3)));
    CHECK(same_bits(d["A"]["u"].get<double>(), u_alpha(rho, a, 0.3)));
    CHECK(same_bits(d["B"]["j"].get<double>(), wyd_j(rho, b, 0.3)));
    CHECK(same_bits(d["A"]["variance"].get<double>(), variance(rho, a)));
    const Complex corr = corr_alpha(rho, a, b, 0.3);
    CHECK(same_bits(d["corr_alpha"][0].get<double>(), corr.real()));
    CHECK(same_bits(d["corr_alpha"][1].get<double>(), corr.imag()));
    CHECK(d["A"]["skew_information"].get<double>() == doctest::Approx(0.0481169313142).epsilon(1e-11));
    CHECK(d["corr_alpha"][1].get<double>() == doctest::Approx(-0.464453459789).epsilon(1e-11));
    CHECK(d["corr_sym"][1].get<double>() == 0.0);
    CHECK(d["commutator_expectation"][1].get<double>() == doctest::Approx(-2.0 / 3.0).epsilon(1e-15));
    const auto& m = d["metric_adjusted"];
    REQUIRE(m.is_object());
    CHECK(m["f_zero"] == 0.25);
    CHECK(same_bits(m["A"]["skew_information"].get<double>(), metric_quantities(rho, MonotoneFunction::wy(), a).i_f));
    CHECK(m["A"]["u"].get<double>() == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
  }

  TEST_CASE("metric block for non-regular f or singular states") {
    const auto r = invoke({"compute", "--input", kFixtures + "/equality_wy.json", "--f", "BKM"});
    CHECK(r.code == kOk);
    CHECK(r.doc()["metric_adjusted"].is_null());
    CHECK(r.doc()["metric_adjusted_note"] == "BKM is not regular");
    json doc = equality_doc();
    doc["rho"] = matrix_to_json(Matrix{{1.0, 0.0}, {0.0, 0.0}});
    const TempInput pure(doc);
    const auto s = invoke({"compute", "--input", pure.path()});
    CHECK(s.code == kOk);
    CHECK(s.doc()["rho"]["invertible"] == false);
    CHECK(s.doc()["metric_adjusted"].is_null());
  }

  TEST_CASE("re-emitting parsed output is the identity") {
    const auto r = invoke({"compute", "--input", kFixtures + "/remark_2_1.json", "--f", "WYD:0.1"});
    REQUIRE(r.code == kOk);
    const json once = r.doc();
    CHECK(json::parse(once.dump(2)) == once);
    CHECK(once.dump(2) + "\n" == r.out);
  }
}

TEST_SUITE("cli scan and fuzz") {
  TEST_CASE("scan csv") {
    const auto r = invoke({"scan", "--input", kFixtures + "/remark_2_1.json", "--id", "thm3", "--alpha-grid",
                           "0:1:5", "--gamma-grid", "0,0.5,1", "--format", "csv"});
    CHECK(r.code == kOk);
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "alpha,gamma,margin,in_region");
    const auto in = load_problem(kFixtures + "/remark_2_1.json");
    const auto rows = scan_grid(in.rho, in.a, in.b, InequalityId::thm3, {0.0, 0.25, 0.5, 0.75, 1.0}, {0.0, 0.5, 1.0});
    std::size_t k = 0;
    while (std::getline(lines, line)) {
      REQUIRE(k < rows.size());
      CHECK(line.find('\r') == std::string::npos);
      std::istringstream cells(line);
      std::string alpha, gamma, margin, region;
      std::getline(cells, alpha, ',');
      std::getline(cells, gamma, ',');
      std::getline(cells, margin, ',');
      std::getline(cells, region);
      CHECK(same_bits(std::strtod(alpha.c_str(), nullptr), rows[k].alpha));
      CHECK(same_bits(std::strtod(gamma.c_str(), nullptr), rows[k].gamma));
      CHECK(same_bits(std::strtod(margin.c_str(), nullptr), rows[k].margin));
      CHECK(region == (rows[k].in_region ? "true" : "false"));
      ++k;
    }
    CHECK(k == 15);
  }

  TEST_CASE("scan json") {
    const auto r = invoke({"scan", "--input", kFixtures + "/remark_2_1.json", "--id", "thm2", "--alpha-grid",
                           "0.1,0.5,0.9", "--format", "json"});
    CHECK(r.code == kOk);
    const auto d = r.doc();
    CHECK(d["id"] == "THM2");
    REQUIRE(d["rows"].size() == 3);
    CHECK(d["rows"][0]["margin"].get<double>() == doctest::Approx(-0.283320211527).epsilon(1e-10));
    CHECK(d["rows"][0]["holds"] == false);
    CHECK(d["rows"][0]["in_region"] == false);
    const auto strict = invoke({"scan", "--input", kFixtures + "/equality_wy.json", "--id", "thm2", "--alpha-grid",
                                "0.5", "--tol", "-1e-6"});
    CHECK(strict.code == kViolation);
  }

  TEST_CASE("fuzz report") {
    const auto r = invoke({"fuzz", "--seed", "7", "--trials", "50", "--dim", "2", "--id", "thm2,luo", "--alpha-grid",
                           "0.1,0.5", "--pin-fixture", "REMARK_2_1", "--threads", "2"});
    CHECK(r.code == kOk);
    const auto d = r.doc();
    CHECK(d["trials_run"] == 50);
    CHECK(d["total_violations"] == 0);
    CHECK(d["config"]["seed"] == 7);
    CHECK(d["config"]["pinned_fixture"] == "REMARK_2_1");
    REQUIRE(d["per_id"].size() == 2);
    const auto& thm2 = d["per_id"][0];
    CHECK(thm2["id"] == "THM2");
    CHECK(thm2["evaluations"] == 100);
    CHECK(thm2["out_of_region_failures"].get<int>() >= 1);
    CHECK(thm2["pinned_min"]["trial"] == 0);
    CHECK(thm2["pinned_min"]["margin"].get<double>() == doctest::Approx(-0.283320211527).epsilon(1e-10));
    CHECK(thm2["argmin"]["stream_key"].get<std::string>().rfind("0x", 0) == 0);
    // Same seed, different worker count: identical apart from timing.
    auto again = invoke({"fuzz", "--seed", "7", "--trials", "50", "--dim", "2", "--id", "thm2,luo", "--alpha-grid",
                         "0.1,0.5", "--pin-fixture", "REMARK_2_1", "--threads", "1"})
                     .doc();
    json first = d;
    first.erase("elapsed_seconds");
    again.erase("elapsed_seconds");
    CHECK(first == again);
  }

  TEST_CASE("fuzz violations exit 1") {
    const auto r = invoke({"fuzz", "--seed", "1", "--trials", "5", "--id", "heis", "--tol", "-1.5", "--max-recorded", "2"});
    CHECK(r.code == kViolation);
    CHECK(r.doc()["total_violations"] == 5);
    CHECK(r.doc()["per_id"][0]["violation_list"].size() == 2);
  }
}

TEST_SUITE("json io") {
  TEST_CASE("problem parsing") {
    json doc = equality_doc();
    doc["alpha"] = 0.25;
    doc["f"] = {{"kind", "WYD"}, {"alpha", 0.4}};
    const auto in = parse_problem(doc);
    CHECK(in.alpha == 0.25);
    CHECK(!in.gamma);
    REQUIRE(in.f);
    CHECK(in.f->name() == "WYD:0.4");
    CHECK(in.rho.matrix() == third_two_thirds());
    // Lower-case keys and bare real entries are accepted.
    const json plain{{"rho", {{0.5, 0.0}, {0.0, 0.5}}}, {"a", {{1.0, 0.0}, {0.0, -1.0}}}, {"b", {{0.0, 1.0}, {1.0, 0.0}}}};
    CHECK(parse_problem(plain).a.matrix() == testing::sigma_z());
    CHECK(parse_problem(json{{"rho", plain["rho"]}, {"A", plain["a"]}, {"B", plain["b"]}, {"f", "sld"}}).f->name() ==
          "SLD");
  }

  TEST_CASE("validation errors name the invariant") {
    auto invariant_of = [](const json& doc) -> std::string {
      try {
        parse_problem(doc);
      } catch (const ValidationError& e) {
        return e.invariant();
      }
      return "none";
    };
    json doc = equality_doc();
    doc["A"] = json{{0.0, 1.0}, {0.0, 0.0}};
    CHECK(invariant_of(doc) == "hermitian");
    doc = equality_doc();
    doc["rho"] = json{{1.5, 0.0}, {0.0, -0.5}};
    CHECK(invariant_of(doc) == "positivity");
    doc = equality_doc();
    doc["B"] = json{{0.0, 1.0, 2.0}, {1.0, 0.0}};
    CHECK(invariant_of(doc) == "shape");
    doc = equality_doc();
    doc["B"] = matrix_to_json(Matrix::identity(3));
    CHECK(invariant_of(doc) == "shape");
    doc = equality_doc();
    doc.erase("rho");
    CHECK(invariant_of(doc) == "schema");
    doc = equality_doc();
    doc["alpha"] = "half";
    CHECK(invariant_of(doc) == "schema");
    CHECK(invariant_of(json::array()) == "schema");
    doc = equality_doc();
    doc["A"][0][0] = json{1.0, "x"};
    CHECK(invariant_of(doc) == "schema");
  }

  TEST_CASE("doubles round-trip bit-exactly") {
    KeyedStream s(3, 0);
    for (int k = 0; k < 2000; ++k) {
      const double x = std::ldexp(s.uniform() - 0.5, static_cast<int>(s() % 600) - 300);
      const Complex z(x, -x / 3.0);
      const json j = complex_to_json(z);
      const Complex back = complex_from_json(json::parse(j.dump()));
      CHECK(same_bits(back.real(), z.real()));
      CHECK(same_bits(back.imag(), z.imag()));
    }
    const Matrix m = make_trial(RandomModelConfig{.seed = 1, .dim = 4}, 0).rho.matrix();
    CHECK(matrix_from_json(json::parse(matrix_to_json(m).dump()), "m") == m);
    CHECK(complex_to_json(Complex(NAN, 1.0))[0].is_null());
  }

  TEST_CASE("grids and lists") {
    CHECK(parse_grid("0:1:5") == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
    CHECK(parse_grid("0.5:1:1") == std::vector<double>{0.5});
    CHECK(parse_grid("0.1, 0.2,0.3") == std::vector<double>{0.1, 0.2, 0.3});
    CHECK(parse_grid("0:1:11")[3] == 0.3);
    CHECK(parse_grid("0:1:11").back() == 1.0);
    CHECK_THROWS_AS(parse_grid("0:1"), DomainError);
    CHECK_THROWS_AS(parse_grid("0:1:0"), DomainError);
    CHECK_THROWS_AS(parse_grid("0:1:2.5"), DomainError);
    CHECK_THROWS_AS(parse_grid("a,b"), DomainError);
    CHECK_THROWS_AS(parse_grid(""), DomainError);
    CHECK(split_list("THM2, luo,,COR3 ") == std::vector<std::string>{"THM2", "luo", "COR3"});
  }

  TEST_CASE("summaries serialize every field") {
    IdSummary s;
    s.id = "THM2";
    s.evaluations = 4;
    TrialPoint p;
    p.trial = 3;
    p.stream_key = 0xabcULL;
    p.alpha = 0.1;
    p.margin = -0.5;
    s.argmin = p;
    s.pinned_min = p;
    const json j = to_json(s);
    CHECK(j["min_margin"] == -0.5);
    CHECK(j["argmin"]["stream_key"] == "0x0000000000000abc");
    CHECK(j["argmin"]["alpha"] == 0.1);
    CHECK(!j["argmin"].contains("gamma"));
    CHECK(j["min_margin_in_region"].is_null());
    CHECK(j["pinned_min"]["trial"] == 3);
    CHECK(j["violation_list"].empty());
  }
}
