#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <string>

#include <json.hpp>

#include "wrdea/io.hpp"
#include "wrdea/pipeline.hpp"

using namespace wrdea;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name, const std::string& contents)
      : path("wrdea_test_" + name) {
    std::ofstream out(path, std::ios::binary);
    out << contents;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("dataset parsing happy path", "[io]") {
  TempFile file("ok.csv", "dmu,x1,y1\nA,1,1\nB,2,3\nC,3,3\n");
  const DeaInstance instance = parse_dataset(file.path);
  CHECK(instance.dmu_count() == 3);
  CHECK(instance.input_count() == 1);
  CHECK(instance.output_count() == 1);
  CHECK(instance.labels == std::vector<std::string>{"A", "B", "C"});
  CHECK(instance.inputs(0, 2) == 3.0);
  CHECK(instance.outputs(0, 1) == 3.0);
}

TEST_CASE("dataset format errors carry coordinates", "[io]") {
  TempFile swapped("swapped.csv", "dmu,y1,x1\nA,1,1\n");
  CHECK_THROWS_WITH(parse_dataset(swapped.path),
                    Catch::Matchers::ContainsSubstring("inputs must precede outputs"));

  TempFile bad_cell("bad_cell.csv", "dmu,x1,y1\nA,1,1\nB,oops,3\n");
  CHECK_THROWS_WITH(parse_dataset(bad_cell.path),
                    Catch::Matchers::ContainsSubstring("row 3, column 2"));

  TempFile negative("neg.csv", "dmu,x1,y1\nA,1,-1\n");
  CHECK_THROWS_WITH(parse_dataset(negative.path),
                    Catch::Matchers::ContainsSubstring("negative"));

  TempFile duplicate("dup.csv", "dmu,x1,y1\nA,1,1\nA,2,3\n");
  CHECK_THROWS_WITH(parse_dataset(duplicate.path),
                    Catch::Matchers::ContainsSubstring("duplicate DMU label"));

  TempFile missing("missing.csv", "dmu,x1,y1\nA,1\n");
  CHECK_THROWS_AS(parse_dataset(missing.path), ValidationError);
}

TEST_CASE("restriction parsing", "[io]") {
  TempFile file("restr.json", R"([
    {"side": "input", "coeffs": {"1": 1.0, "2": -0.3333333333}},
    {"side": "input", "coeffs": {"2": 1.0, "3": -0.5}},
    {"side": "input", "coeffs": {"3": 1.0, "4": -1.0}}
  ])");
  const auto specs = parse_restrictions(file.path);
  REQUIRE(specs.size() == 3);
  const auto wr = compile_restrictions(specs, 4, 1);
  CHECK(wr.input_matrix.cols() == 3);
  CHECK(wr.input_matrix(0, 0) == 1.0);
  CHECK(wr.input_matrix(1, 0) == Catch::Approx(-1.0 / 3.0).margin(1e-9));
  CHECK(wr.input_matrix(3, 2) == -1.0);

  TempFile empty("restr_empty.json", "[]");
  CHECK(parse_restrictions(empty.path).empty());

  TempFile output("restr_out.json", R"([{"side":"output","coeffs":{"1":1,"2":-2}}])");
  const auto out_specs = parse_restrictions(output.path);
  const auto out_wr = compile_restrictions(out_specs, 1, 2);
  REQUIRE(out_wr.output_matrix.cols() == 1);
  CHECK(out_wr.output_matrix(0, 0) == 1.0);
  CHECK(out_wr.output_matrix(1, 0) == -2.0);
}

TEST_CASE("restriction parsing errors", "[io]") {
  TempFile side("restr_side.json", R"([{"side":"sideways","coeffs":{"1":1}}])");
  CHECK_THROWS_AS(parse_restrictions(side.path), ValidationError);
  TempFile coeffs("restr_coeffs.json", R"([{"side":"input","coeffs":{}}])");
  CHECK_THROWS_AS(parse_restrictions(coeffs.path), ValidationError);
  TempFile index("restr_idx.json", R"([{"side":"input","coeffs":{"zero":1}}])");
  CHECK_THROWS_AS(parse_restrictions(index.path), ValidationError);
  TempFile syntax("restr_syntax.json", "[{");
  CHECK_THROWS_AS(parse_restrictions(syntax.path), ValidationError);
}

TEST_CASE("single-DMU report content", "[io]") {
  DeaInstance instance;
  instance.labels = {"only"};
  instance.inputs = Matrix::Constant(1, 1, 2.0);
  instance.outputs = Matrix::Constant(1, 1, 3.0);
  const auto reports = run_all(instance, WeightRestrictions::none(1, 1));
  const std::string rendered = render_report(reports, OutputFormat::Json);
  const auto doc = nlohmann::json::parse(rendered);
  REQUIRE(doc.is_array());
  REQUIRE(doc.size() == 1);
  CHECK(doc[0]["dmu"] == "only");
  CHECK(doc[0]["rts"] == "C");
  CHECK(doc[0]["u_upper"] == "inf");
  CHECK(doc[0]["u_lower"].get<double>() == Catch::Approx(-1.0).margin(1e-9));
  CHECK(doc[0]["group"] == "group1_efficient");
}

TEST_CASE("report numbers round-trip at print precision", "[io]") {
  DeaInstance instance;
  instance.labels = {"A", "B", "C"};
  instance.inputs.resize(1, 3);
  instance.inputs << 1, 2, 3;
  instance.outputs.resize(1, 3);
  instance.outputs << 1, 3, 3;
  const auto reports = run_all(instance, WeightRestrictions::none(1, 1));
  const auto doc = nlohmann::json::parse(render_report(reports, OutputFormat::Json));
  for (size_t idx = 0; idx < reports.size(); ++idx) {
    const double theta = doc[idx]["theta_star"].get<double>();
    const double slack = doc[idx]["slack_sum"].get<double>();
    CHECK(theta == Catch::Approx(reports[idx].theta_star).epsilon(1e-5));
    CHECK(slack == Catch::Approx(reports[idx].slack_sum).margin(1e-5));
  }
}

TEST_CASE("identical runs emit identical bytes", "[io]") {
  DeaInstance instance;
  instance.labels = {"A", "B", "E", "C"};
  instance.inputs.resize(2, 4);
  instance.inputs << 1, 3, 2, 4,
                     3, 1, 2, 4;
  instance.outputs = Matrix::Ones(1, 4);
  const auto none = WeightRestrictions::none(2, 1);
  RunOptions options;
  options.force_grs = true;
  const auto first = run_all(instance, none, {}, options);
  const auto second = run_all(instance, none, {}, options);
  for (const auto format : {OutputFormat::Json, OutputFormat::Csv})
    CHECK(render_report(first, format) == render_report(second, format));
}

TEST_CASE("csv rendering is rectangular", "[io]") {
  DeaInstance instance;
  instance.labels = {"A", "B"};
  instance.inputs.resize(1, 2);
  instance.inputs << 1, 2;
  instance.outputs.resize(1, 2);
  instance.outputs << 1, 1;
  const auto reports = run_all(instance, WeightRestrictions::none(1, 1));
  const std::string csv = render_report(reports, OutputFormat::Csv);
  const std::string header = csv.substr(0, csv.find('\n'));
  const auto commas = std::count(header.begin(), header.end(), ',');
  size_t pos = csv.find('\n') + 1;
  while (pos < csv.size()) {
    const size_t next = csv.find('\n', pos);
    const std::string line = csv.substr(pos, next - pos);
    CHECK(std::count(line.begin(), line.end(), ',') == commas);
    pos = next + 1;
  }
}

TEST_CASE("write_report refuses empty input and bad paths", "[io]") {
  CHECK_THROWS_AS(render_report({}, OutputFormat::Json), ValidationError);
  DeaInstance instance;
  instance.labels = {"A"};
  instance.inputs = Matrix::Ones(1, 1);
  instance.outputs = Matrix::Ones(1, 1);
  const auto reports = run_all(instance, WeightRestrictions::none(1, 1));
  CHECK_THROWS_AS(write_report(reports, OutputFormat::Json, "/nonexistent-dir/x.json"),
                  ValidationError);
}
