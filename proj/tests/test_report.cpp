#include "hecke_forge/report.hpp"
#include "hecke_forge/verify.hpp"

#include <gtest/gtest.h>

#include <stdexcept>

using namespace hecke_forge;
using report::Status;
using report::VerificationReport;

namespace {

VerificationReport sample() {
  VerificationReport r;
  r.name = "weyl.period";
  r.params = {{"e", "4"}, {"T", "{1,3}"}};
  r.lhs = "2";
  r.rhs = "2";
  r.elapsed_ms = 17;
  r.settle();
  return r;
}

}  // namespace

TEST(Report, SettleUsesTolerance) {
  VerificationReport r;
  r.abs_error = 1e-9;
  r.tolerance = 1e-8;
  r.settle();
  EXPECT_EQ(r.status, Status::pass);
  r.tolerance = 0;
  r.settle();
  EXPECT_EQ(r.status, Status::fail);
  r.abs_error = 0;
  r.settle();
  EXPECT_EQ(r.status, Status::pass);
}

TEST(Report, Formatting) {
  EXPECT_EQ(report::format_double(0.5), "0.5");
  EXPECT_EQ(report::format_double(-0.0), "0");
  EXPECT_EQ(report::format_complex({1, -2}), "1-2i");
  EXPECT_EQ(report::format_complex({-0.25, 1e-15}), "-0.25+0i");
  EXPECT_EQ(report::status_name(Status::skipped), "skipped");
}

TEST(Report, JsonFieldsAndOrder) {
  const auto j = report::to_json(sample(), true);
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"name", "params", "lhs", "rhs", "abs_error", "tolerance", "status", "elapsed_ms"}));
  EXPECT_EQ(j["params"]["T"], "{1,3}");
  EXPECT_EQ(j["status"], "pass");
  EXPECT_FALSE(report::to_json(sample(), false).contains("elapsed_ms"));
}

TEST(Report, DocumentSchema) {
  const auto doc = nlohmann::json::parse(report::reports_json({sample(), sample()}, true));
  EXPECT_EQ(doc["schema"], "hecke-forge/1");
  EXPECT_TRUE(doc.contains("generated_at"));
  EXPECT_EQ(doc["reports"].size(), 2u);
  const auto plain = report::reports_json({sample()}, false);
  EXPECT_EQ(plain.find("generated_at"), std::string::npos);
  EXPECT_EQ(plain.find("elapsed_ms"), std::string::npos);
  EXPECT_EQ(plain, report::reports_json({sample()}, false));
}

TEST(Report, Csv) {
  const auto csv = report::reports_csv({sample()}, false);
  EXPECT_EQ(csv, "name,params,lhs,rhs,abs_error,tolerance,status\nweyl.period,\"e=4 T={1,3}\",2,2,0,0,pass\n");
  EXPECT_EQ(report::csv_field("a\"b"), "\"a\"\"b\"");
  const auto timed = report::reports_csv({sample()}, true);
  EXPECT_NE(timed.find(",elapsed_ms\n"), std::string::npos);
  EXPECT_NE(timed.find(",pass,17\n"), std::string::npos);
}

TEST(Runner, ExceptionsBecomeStatuses) {
  const verify::PlannedCheck limit{"x.limit", {}, [](VerificationReport&) { throw finglq::SizeLimitExceeded("too big"); }};
  const verify::PlannedCheck broken{"x.broken", {}, [](VerificationReport&) { throw std::runtime_error("boom"); }};
  const verify::PlannedCheck fine{"x.fine", {}, [](VerificationReport& r) { verify::exact(r, Rational(1, 2), Rational(1, 2)); }};
  const auto reports = verify::run_all({limit, broken, fine}, 2);
  ASSERT_EQ(reports.size(), 3u);
  EXPECT_EQ(reports[0].status, Status::skipped);
  EXPECT_EQ(reports[0].note, "too big");
  EXPECT_EQ(reports[1].status, Status::fail);
  EXPECT_EQ(reports[2].status, Status::pass);
  EXPECT_FALSE(verify::all_passed(reports));
  EXPECT_TRUE(verify::all_passed({reports[0], reports[2]}));
}

TEST(Runner, ExactRationalMismatchIsNonzero) {
  VerificationReport r;
  verify::exact(r, Rational(1, 3), Rational(1, 2));
  EXPECT_EQ(r.status, Status::fail);
  EXPECT_GT(r.abs_error, 0);
}

TEST(Runner, OrderIsIndependentOfWorkerCount) {
  std::vector<verify::PlannedCheck> plan;
  for (int i = 0; i < 20; ++i)
    plan.push_back({"n" + std::to_string(i), {}, [i](VerificationReport& r) { verify::exact(r, std::to_string(i * i), std::to_string(i * i)); }});
  const auto a = verify::run_all(plan, 1);
  const auto b = verify::run_all(plan, 4);
  EXPECT_EQ(report::reports_json(a, false), report::reports_json(b, false));
}

TEST(Runner, SmallPlanPasses) {
  verify::VerifyOptions o;
  o.max_e = 2;
  o.max_q = 3;
  const auto plan = verify::plan_all(o);
  const auto reports = verify::run_all(plan);
  std::size_t pass = 0;
  for (const auto& r : reports) {
    EXPECT_NE(r.status, Status::fail) << r.name << " " << r.param_string() << ": " << r.note;
    pass += r.status == Status::pass;
  }
  EXPECT_GE(pass, 20u);
  EXPECT_TRUE(verify::all_passed(reports));
}
