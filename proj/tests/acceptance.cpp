// Acceptance criteria 1-10, one PASS/FAIL line each. Exit 0 iff all pass.
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "golden.hpp"
#include "roundtrip.hpp"
#include "weylmod/verify.hpp"

using namespace weylmod;

namespace {

struct Outcome {
  bool ok = false;
  std::string detail;
  double seconds = 0;
};

Outcome suite(const std::string& name, double limit) {
  SuiteResult r = run_suite(name, VerifyBounds{3, 3, 4});
  Outcome o{r.ok && r.seconds < limit, std::to_string(r.checks) + " checks", r.seconds};
  if (!r.ok) o.detail += ", " + std::to_string(r.failures) + " failures: " + r.detail;
  if (r.seconds >= limit) o.detail += ", over the " + std::to_string(static_cast<int>(limit)) + " s budget";
  return o;
}

Outcome cli() {
  const auto start = std::chrono::steady_clock::now();
  Outcome o{true, "", 0};
  const auto names = weylmod::testing::golden_cases(WEYLMOD_GOLDEN_DIR);
  std::size_t golden_fail = 0;
  for (const auto& n : names) {
    const std::string msg = weylmod::testing::check_golden(WEYLMOD_CLI, WEYLMOD_GOLDEN_DIR, n);
    if (!msg.empty()) {
      if (golden_fail++ == 0) o.detail += "first golden mismatch: " + msg.substr(0, msg.find('\n')) + "; ";
    }
  }
  const auto corpus = weylmod::testing::load_corpus(WEYLMOD_CORPUS_DIR "/roundtrip.txt");
  std::size_t corpus_fail = 0;
  for (const auto& line : corpus)
    if (!weylmod::testing::roundtrip(line).empty()) ++corpus_fail;

  const auto vstart = std::chrono::steady_clock::now();
  const auto verify = weylmod::testing::run_captured(WEYLMOD_CLI, {"verify", "--suite", "all"});
  const double vsec = std::chrono::duration<double>(std::chrono::steady_clock::now() - vstart).count();

  o.ok = !names.empty() && golden_fail == 0 && corpus.size() >= 50 && corpus_fail == 0 && verify.code == 0 &&
         vsec < 20 * 60;
  o.detail += std::to_string(names.size() - golden_fail) + "/" + std::to_string(names.size()) + " goldens, " +
              std::to_string(corpus.size() - corpus_fail) + "/" + std::to_string(corpus.size()) +
              " corpus lines, verify --suite all exit " + std::to_string(verify.code);
  o.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "bracket identities", [] { return suite("bracket", 1); }},
      {2, "Jacobi and antisymmetry", [] { return suite("jacobi", 120); }},
      {3, "cocycle", [] { return suite("cocycle", 60); }},
      {4, "module axiom, symbolic parameters", [] { return suite("module", 300); }},
      {5, "associative action split", [] { return suite("assoc", 600); }},
      {6, "irreducibility witnesses", [] { return suite("witness", 600); }},
      {7, "highest weight", [] { return suite("hw", 600); }},
      {8, "tensor modules", [] { return suite("tensor", 600); }},
      {9, "generator closure", [] { return suite("span", 600); }},
      {10, "CLI", cli},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what(), 0};
    }
    failed += o.ok ? 0 : 1;
    std::printf("%s %2d %s (%s; %.2f s)\n", o.ok ? "PASS" : "FAIL", c.id, c.title, o.detail.c_str(), o.seconds);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
