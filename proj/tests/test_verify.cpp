#include "doctest.h"
#include "hle/errors.hpp"
#include "hle/verify.hpp"

using namespace hle;

TEST_CASE("every suite passes at the default seed") {
  VerifyOptions opt;
  opt.threads = default_thread_count();
  for (const auto& name : suite_names()) {
    for (const auto& s : run_verify(name, opt)) {
      for (const auto& c : s.cases) CHECK_MESSAGE(c.pass, s.name << ": " << c.label << ": " << c.detail);
    }
  }
}

TEST_CASE("suite results do not depend on the thread count") {
  VerifyOptions one, many;
  one.threads = 1;
  many.threads = 4;
  one.seed = many.seed = 11;
  const auto a = run_verify("invariance", one), b = run_verify("invariance", many);
  REQUIRE(a.size() == 1);
  REQUIRE(a[0].cases.size() == b[0].cases.size());
  for (std::size_t i = 0; i < a[0].cases.size(); ++i) CHECK(a[0].cases[i].detail == b[0].cases[i].detail);
}

TEST_CASE("unknown suites are rejected") { CHECK_THROWS_AS(run_verify("nope", {}), UnknownBinding); }
