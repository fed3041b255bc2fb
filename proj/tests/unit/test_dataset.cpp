#include <catch_amalgamated.hpp>

#include <cmath>
#include <functional>

#include "smotelab/dataset.hpp"
#include "smotelab/error.hpp"
#include "test_support.hpp"

using namespace smotelab;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;

namespace {

Error error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e;
  }
  FAIL("expected smotelab::Error");
  return Error(ErrorCode::InvalidArgument, "");
}

}  // namespace

TEST_CASE("sentinel values are filtered", "[dataset]") {
  testing::TempDir dir;
  testing::write_file(dir / "co.csv", "time,co\n1,1.0\n2,-200\n3,2.0\n");
  DatasetRef ref{(dir / "co.csv").string(), std::string("co"), -200.0};
  const auto col = load_column(ref);
  CHECK(col.values == std::vector<double>{1.0, 2.0});
  CHECK(col.dropped == 1);
  CHECK(col.column_name == "co");
}

TEST_CASE("missing column names the available ones", "[dataset]") {
  testing::TempDir dir;
  testing::write_file(dir / "t.csv", "alpha,beta\n1,2\n");
  const auto e = error_of([&] { load_column({(dir / "t.csv").string(), std::string("gamma")}); });
  CHECK(e.code() == ErrorCode::ColumnNotFound);
  CHECK_THAT(std::string(e.what()), ContainsSubstring("alpha") && ContainsSubstring("beta"));

  const auto idx = error_of([&] { load_column({(dir / "t.csv").string(), std::size_t{5}}); });
  CHECK(idx.code() == ErrorCode::ColumnNotFound);
  CHECK(error_of([&] { load_column({(dir / "nope.csv").string(), std::string("a")}); }).code() ==
        ErrorCode::FileNotFound);
}

TEST_CASE("cleaning rules for blank, NA and quoted cells", "[dataset]") {
  testing::TempDir dir;
  testing::write_file(dir / "m.csv",
                      "id,\"value, raw\"\r\n"
                      "1,\"3.5\"\r\n"
                      "2,NA\r\n"
                      ",\r\n"
                      "3,\r\n"
                      "4, 7 \r\n"
                      "5,nan\r\n"
                      "\r\n");
  const auto col = load_column({(dir / "m.csv").string(), std::string("value, raw")});
  CHECK(col.values == std::vector<double>{3.5, 7.0});
  CHECK(col.dropped == 3);
  CHECK(col.blank_rows == 2);

  const auto by_index = load_column({(dir / "m.csv").string(), std::size_t{0}});
  CHECK(by_index.values == std::vector<double>{1, 2, 3, 4, 5});
}

TEST_CASE("unparseable cells report file and line", "[dataset]") {
  testing::TempDir dir;
  testing::write_file(dir / "bad.csv", "x\n1\n2\nabc\n");
  const auto e = error_of([&] { load_column({(dir / "bad.csv").string(), std::string("x")}); });
  CHECK(e.code() == ErrorCode::ParseError);
  CHECK_THAT(std::string(e.what()), ContainsSubstring("bad.csv:4"));

  testing::write_file(dir / "empty.csv", "x\nNA\n-200\n");
  CHECK(error_of([&] { load_column({(dir / "empty.csv").string(), std::string("x"), -200.0}); })
            .code() == ErrorCode::EmptyAfterCleaning);
}

TEST_CASE("semicolon delimiter with decimal comma", "[dataset]") {
  testing::TempDir dir;
  testing::write_file(dir / "aq.csv",
                      "Date;Time;CO(GT);T;;\n"
                      "10/03/2004;18.00.00;2,6;13,6;;\n"
                      "10/03/2004;19.00.00;-200;13,3;;\n"
                      "10/03/2004;20.00.00;2,2;11,9;;\n"
                      ";;;;;\n");
  DatasetRef ref{(dir / "aq.csv").string(), std::string("CO(GT)"), -200.0, ';', ','};
  const auto col = load_column(ref);
  CHECK(col.values == std::vector<double>{2.6, 2.2});
  CHECK(col.dropped == 1);
  CHECK(col.blank_rows == 1);

  ref.decimal = ';';
  CHECK(error_of([&] { load_column(ref); }).code() == ErrorCode::InvalidArgument);
}

TEST_CASE("bundled fixtures load", "[dataset]") {
  const auto housing =
      load_column({testing::fixture("housing_sample.csv").string(), std::string("median_income")});
  CHECK(housing.values.size() == 2000);
  CHECK(*std::min_element(housing.values.begin(), housing.values.end()) > 0.0);

  const auto air = load_column({testing::fixture("air_quality_sample.csv").string(),
                                std::string("CO(GT)"), -200.0, ';', ','});
  CHECK(air.values.size() + air.dropped == 720);
  CHECK(air.dropped > 0);
  CHECK(air.blank_rows == 6);
}

TEST_CASE("min-max normalization", "[dataset]") {
  const auto n = normalize_minmax({2, 4, 6});
  CHECK(n.values == std::vector<double>{0.0, 0.5, 1.0});
  CHECK(n.min == 2.0);
  CHECK(n.max == 6.0);
  CHECK(error_of([] { normalize_minmax({5, 5}); }).code() == ErrorCode::DegenerateRange);
  CHECK(error_of([] { normalize_minmax({}); }).code() == ErrorCode::EmptySample);

  const std::vector<double> raw{-3.25, 0.1, 17.0, 4.4, 1e-3};
  const auto u = normalize_minmax(raw);
  const auto back = denormalize(u.values, u.min, u.max);
  for (std::size_t i = 0; i < raw.size(); ++i) CHECK_THAT(back[i], WithinAbs(raw[i], 1e-12));
}
