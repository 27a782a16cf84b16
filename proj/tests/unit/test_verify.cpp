#include <gtest/gtest.h>

#include <set>

#include "madelung/verify.hpp"

namespace madelung {
namespace {

TEST(Verify, EveryModuleHasChecks) {
  std::set<std::string> modules;
  for (const std::string& name : verify_check_names()) modules.insert(name.substr(0, name.find('/')));
  EXPECT_EQ(modules, (std::set<std::string>{"special_functions", "lattice_theta", "green", "crystal_potential",
                                             "madelung", "lattice_sum_oracle"}));
}

TEST(Verify, FilterSelectsSubset) {
  VerifyOptions opts;
  opts.filter = "lattice_theta/";
  const VerifyReport r = run_verify(opts);
  EXPECT_EQ(r.checks.size(), 6u);
  EXPECT_TRUE(r.passed()) << r.to_json();
  EXPECT_EQ(r.to_json(), run_verify(opts).to_json());
}

TEST(Verify, EmptyFilterMatchIsEmptyPass) {
  VerifyOptions opts;
  opts.filter = "no-such-check";
  const VerifyReport r = run_verify(opts);
  EXPECT_TRUE(r.checks.empty());
  EXPECT_TRUE(r.passed());
}

}  // namespace
}  // namespace madelung
