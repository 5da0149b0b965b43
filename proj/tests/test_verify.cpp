#include "doctest.h"
#include "ogg/verify.hpp"

using namespace ogg;

TEST_CASE("default prime sample") {
  CHECK(default_qset(11, 5) == std::vector<std::int64_t>{3, 7, 13, 17, 19, 23, 29, 31});
  CHECK(default_qset(11, 7) == std::vector<std::int64_t>{3, 5, 13, 17, 19, 23, 29, 31});
  CHECK(default_qset(15, 7, 3) == std::vector<std::int64_t>{11, 13, 17});
}

TEST_CASE("torsion bound") {
  CHECK(torsion_bound(11, 5, {3, 7}) == 1);
  CHECK(torsion_bound(11, 7, default_qset(11, 7)) == 0);
  CHECK_THROWS_AS(torsion_bound(11, 5, {2}), PreconditionError);
  CHECK_THROWS_AS(torsion_bound(11, 5, {5}), PreconditionError);
  CHECK_THROWS_AS(torsion_bound(11, 5, {11}), PreconditionError);
  CHECK_THROWS_AS(torsion_bound(11, 5, {}), PreconditionError);

  const LevelContext ctx = level_context(11);
  CHECK(torsion_bound(ctx, 5, {3, 7}) == 1);
  CHECK(torsion_bound(ctx, 5, {3, 97}) == torsion_bound(11, 5, {3, 97}));
}

TEST_CASE("single pairs") {
  const VerificationReport r = verify_ogg(11, 5);
  CHECK(r.error.empty());
  CHECK(r.ord_C == 1);
  CHECK(r.ord_TI == 1);
  CHECK(r.ord_X == 1);
  CHECK(r.torsion_bound == 1);
  CHECK(r.bound_tight);
  CHECK(r.passed());
  CHECK(r.qmax == 50);
  CHECK(r.torsion_qset.size() == 8);
  CHECK(r.timings.empty());

  const LevelContext ctx = level_context(11);
  const VerificationReport r7 = verify_ogg(ctx, 7);
  CHECK((r7.ord_C == 0 && r7.ord_TI == 0 && r7.ord_X == 0));
  CHECK(r7.passed());

  const VerificationReport r15 = verify_ogg(15, 7);
  CHECK((r15.ord_C == 0 && r15.ord_TI == 0 && r15.ord_X == 0));
  CHECK(r15.passed());

  VerifyOptions timed;
  timed.timings = true;
  CHECK(!verify_ogg(11, 5, timed).timings.empty());

  CHECK_THROWS_AS(verify_ogg(12, 5), PreconditionError);
  CHECK_THROWS_AS(verify_ogg(1, 5), PreconditionError);
  CHECK_THROWS_AS(verify_ogg(15, 5), PreconditionError);
  CHECK_THROWS_AS(verify_ogg(11, 3), PreconditionError);
  CHECK_THROWS_AS(verify_ogg(11, 9), PreconditionError);
}

TEST_CASE("batches") {
  const auto reports = batch(10, 15, 13);
  std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
  for (const auto& r : reports) {
    pairs.emplace_back(r.level, r.p);
    CHECK_MESSAGE(r.passed(), "N = " << r.level << ", p = " << r.p << " " << r.error);
  }
  const std::vector<std::pair<std::int64_t, std::int64_t>> expected{
      {10, 7}, {10, 11}, {10, 13}, {11, 5}, {11, 7}, {11, 13}, {13, 5}, {13, 7}, {13, 11},
      {14, 5}, {14, 11}, {14, 13}, {15, 7}, {15, 11}, {15, 13}};
  CHECK(pairs == expected);
  CHECK(batch(15, 10, 13).empty());
  CHECK(batch(12, 12, 100).empty());
}
