#include <doctest.h>

#include <stdexcept>

#include "cdscale/verify.hpp"

using namespace cdscale;

namespace {

void require_all(const std::vector<verify::CheckResult>& checks) {
  REQUIRE_FALSE(checks.empty());
  for (const auto& c : checks) {
    INFO(io::format_check(c));
    CHECK(c.passed);
  }
}

}  // namespace

TEST_CASE("random models are reproducible") {
  const auto a = verify::random_table(3, 10), b = verify::random_table(3, 10);
  for (std::size_t j = 1; j <= 10; ++j) CHECK(a.coeffs(j) == b.coeffs(j));
  CHECK(verify::random_table(4, 10).a(1) != a.a(1));
}

TEST_CASE("suites pass on their reference inputs") {
  verify::Options opts;
  opts.n = 300;
  require_all(verify::run_suite("transfer-identities", opts));
  require_all(verify::run_suite("kernel-identities", opts));
  opts.n = 1000;
  require_all(verify::run_suite("section5", opts));
  opts.n = 50;
  require_all(verify::run_suite("appendix-roundtrip", opts));
  opts.n.reset();
  opts.n_list = {200, 400, 800};
  require_all(verify::run_suite("thm25", opts));
  CHECK_THROWS_AS(verify::run_suite("nope", opts), std::invalid_argument);
}

TEST_CASE("suites report failures") {
  verify::Options opts;
  opts.n_list = {50, 100};
  opts.tol = 1e-9;
  bool any_failed = false;
  for (const auto& c : verify::scaling_limit_equivalence(opts)) any_failed = any_failed || !c.passed;
  CHECK(any_failed);
}
