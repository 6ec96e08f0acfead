#include "mcf/io.h"

#include <gtest/gtest.h>

#include <filesystem>

#include "mcf/mobius.h"

namespace mcf {
namespace {

TEST(McfJson, ParsesComponentMajor) {
  const Mcf x = parse_mcf_json(R"({"m": 2, "preperiod": [[1],[1]], "period": [[1,2],[0,1]]})");
  EXPECT_EQ(x.prefix(4), (std::vector<Tuple>{{1, 1}, {1, 0}, {2, 1}, {1, 0}}));
  const Mcf f = parse_mcf_json(R"({"m": 1, "preperiod": [[3, 7, 15]]})");
  EXPECT_TRUE(f.is_finite());
  EXPECT_EQ(f.prefix(5).size(), 3u);
}

TEST(McfJson, RoundTrip) {
  const Mcf x = Mcf::periodic({{1, 1}}, {{1, 0}, {2, 1}});
  const Mcf y = parse_mcf_json(mcf_to_json(x));
  EXPECT_EQ(y.prefix(20), x.prefix(20));
}

TEST(McfJson, BigValuesAsStrings) {
  const BigInt big("123456789012345678901234567890");
  const std::string js = tuples_to_json({{big, BigInt(-4)}}, 2);
  EXPECT_NE(js.find("\"123456789012345678901234567890\""), std::string::npos);
  EXPECT_NE(js.find("-4"), std::string::npos);
  EXPECT_EQ(tuples_from_json(js), (std::vector<Tuple>{{big, BigInt(-4)}}));
}

TEST(McfJson, Errors) {
  EXPECT_THROW(parse_mcf_json("{"), std::invalid_argument);
  EXPECT_THROW(parse_mcf_json(R"({"preperiod": [[1]]})"), std::invalid_argument);
  EXPECT_THROW(parse_mcf_json(R"({"m": 2, "preperiod": [[1]]})"), std::invalid_argument);
  EXPECT_THROW(parse_mcf_json(R"({"m": 2, "preperiod": [[1],[1,2]]})"), std::invalid_argument);
  EXPECT_THROW(parse_mcf_json(R"({"m": 1, "preperiod": [["x"]]})"), std::invalid_argument);
  EXPECT_THROW(parse_mcf_json(R"({"m": 1, "preperiod": [[1.5]]})"), std::invalid_argument);
}

TEST(MatrixJson, RoundTripAndErrors) {
  const Matrix c{{3, 0, 0}, {0, -2, 0}, {0, 0, 6}};
  EXPECT_EQ(parse_matrix_json(matrix_to_json(c)), c);
  EXPECT_EQ(parse_matrix_json("[[3,0,0],[0,-2,0],[0,0,6]]"), c);
  EXPECT_THROW(parse_matrix_json("[[1,2],[3]]"), std::invalid_argument);
  EXPECT_THROW(parse_matrix_json("[]"), std::invalid_argument);
}

TEST(FormsJson, RoundTripAndShape) {
  const FormFamily f = sum_forms(2);
  EXPECT_EQ(parse_forms_json(forms_to_json(f)), f);
  EXPECT_THROW(parse_forms_json("[[[1,0],[0,1]]]"), std::invalid_argument);
  EXPECT_THROW(parse_forms_json("[[[1,0],[0,1]],[[1,0,0],[0,1,0],[0,0,1]]]"), std::invalid_argument);
}

TEST(Text, RoundTripMatchesJson) {
  const std::vector<Tuple> ts{{1, 1}, {2, -3}, {BigInt("99999999999999999999"), 0}};
  const std::string text = tuples_to_text(ts);
  EXPECT_EQ(text.substr(0, 7), "0: (1,1");
  EXPECT_EQ(tuples_from_text(text), ts);
  EXPECT_EQ(tuples_from_json(tuples_to_json(ts, 2)), tuples_from_text(text));
  EXPECT_THROW(tuples_from_text("0: 1,2\n"), std::invalid_argument);
  EXPECT_THROW(tuples_from_text("0: ()\n"), std::invalid_argument);
}

TEST(StepsCsv, Columns) {
  StepLog log;
  log.steps.push_back({StepKind::Input, 1, 0, 5});
  log.steps.push_back({StepKind::Output, 1, 1, 4});
  const std::string a = steps_csv(log, false);
  EXPECT_EQ(a, "step,kind,inputs_so_far,outputs_so_far\n1,in,1,0\n2,out,1,1\n");
  const std::string b = steps_csv(log, true);
  EXPECT_EQ(b.substr(0, b.find('\n')), "step,kind,inputs_so_far,outputs_so_far,max_entry_bits");
  EXPECT_NE(b.find("2,out,1,1,4"), std::string::npos);
}

TEST(Files, WriteThenRead) {
  const auto path = std::filesystem::temp_directory_path() / "mcf_io_test.txt";
  write_file(path.string(), "abc\n");
  EXPECT_EQ(read_file(path.string()), "abc\n");
  std::filesystem::remove(path);
  EXPECT_THROW(read_file(path.string()), std::invalid_argument);
}

}  // namespace
}  // namespace mcf
