#include <gtest/gtest.h>

#include <random>

#include "chowkit/report.hpp"

using namespace chowkit;

namespace {

VerificationReport sample(std::string module, std::string check, Status s) {
  auto r = make_report(std::move(module), std::move(check), "a statement");
  r.status = s;
  r.add("value", "36*lambda1^3 - 92*lambda1*lambda2");
  r.add("primes", "{2,3}");
  return r;
}

}  // namespace

TEST(Report, SerializationRoundTrips) {
  auto r = sample("chern", "open_stratum_classes", Status::Fail);
  r.add("quoted", "say \"x\"\tand \\ newline\n");
  r.seconds = 1.5;
  auto line = to_json_line(r);
  EXPECT_EQ(line.find('\n'), std::string::npos);
  auto back = from_json_line(line);
  EXPECT_EQ(back.module, r.module);
  EXPECT_EQ(back.check, r.check);
  EXPECT_EQ(back.anchor, r.anchor);
  EXPECT_EQ(back.status, r.status);
  EXPECT_EQ(back.witness, r.witness);
  EXPECT_EQ(to_json_line(back), line);
}

TEST(Report, FieldOrderIsStable) {
  auto line = to_json_line(sample("m", "c", Status::Pass));
  EXPECT_EQ(line.rfind("{\"record\":\"check\",\"module\":\"m\",\"check\":\"c\",\"anchor\":", 0), 0u);
  EXPECT_LT(line.find("\"status\""), line.find("\"witness\""));
}

TEST(Report, DeterministicOrdering) {
  std::vector<VerificationReport> rs{sample("m3bar", "b", Status::Pass), sample("chern", "z", Status::Pass),
                                     sample("m3bar", "a", Status::Pass)};
  ReportContext ctx{{{"checksum", "abc"}}};
  auto once = structured_report(ctx, rs);
  std::mt19937 rng(5);
  for (int i = 0; i < 5; ++i) {
    std::shuffle(rs.begin(), rs.end(), rng);
    for (auto& r : rs) r.seconds = i;  // wall time never enters the structured form
    EXPECT_EQ(structured_report(ctx, rs), once);
  }
  EXPECT_LT(once.find("\"chern\""), once.find("\"check\":\"a\""));
  EXPECT_LT(once.find("\"check\":\"a\""), once.find("\"check\":\"b\""));
  EXPECT_EQ(once.rfind("{\"record\":\"context\",\"checksum\":\"abc\"}", 0), 0u);
}

TEST(Report, SummaryLines) {
  std::vector<VerificationReport> ok{sample("a", "x", Status::Pass), sample("b", "y", Status::Pass)};
  auto s = render_summary({}, ok);
  EXPECT_NE(s.find("all 2 checks passed\n"), std::string::npos);
  EXPECT_EQ(exit_status(ok), 0);

  ok.push_back(sample("c", "z", Status::Fail));
  auto f = render_summary({}, ok);
  EXPECT_EQ(f.find("checks passed"), std::string::npos);
  EXPECT_NE(f.find("value = 36*lambda1^3"), std::string::npos);
  EXPECT_NE(exit_status(ok), 0);
}

TEST(Report, ExitStatusDependsOnlyOnStatuses) {
  std::vector<Status> all{Status::Pass, Status::Fail, Status::Inconclusive};
  for (auto a : all)
    for (auto b : all) {
      std::vector<VerificationReport> x{sample("p", "1", a), sample("q", "2", b)};
      std::vector<VerificationReport> y{sample("zz", "other", b), sample("aa", "name", a)};
      EXPECT_EQ(exit_status(x), exit_status(y));
    }
  EXPECT_EQ(exit_status({sample("p", "1", Status::Inconclusive)}), 3);
  EXPECT_EQ(exit_status({sample("p", "1", Status::Inconclusive), sample("p", "2", Status::Fail)}), 1);
}

TEST(Report, EmitWritesBothFiles) {
  auto dir = std::filesystem::temp_directory_path() / "chowkit_report_test";
  std::filesystem::remove_all(dir);
  emit_report(dir, {{{"k", "v"}}}, {sample("a", "x", Status::Pass)});
  std::ifstream j(dir / "report.jsonl"), s(dir / "summary.txt");
  std::string l1, l2;
  std::getline(j, l1);
  std::getline(j, l2);
  EXPECT_EQ(l1, "{\"record\":\"context\",\"k\":\"v\"}");
  EXPECT_EQ(from_json_line(l2).check, "x");
  EXPECT_TRUE(s.good());
  EXPECT_THROW(emit_report(dir, {}, {}), std::invalid_argument);
  EXPECT_THROW(emit_report("/proc/chowkit_nope", {}, {sample("a", "x", Status::Pass)}), std::runtime_error);
  std::filesystem::remove_all(dir);
}
