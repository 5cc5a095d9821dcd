#include <crmw/battery.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <thread>

int main(int argc, char **argv) {
  CLI::App app{"crmw acceptance criteria"};
  crmw::AcceptanceOptions opts;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  std::vector<int> only;
  app.add_option("--seed", opts.seed, "random seed");
  app.add_option("--order", opts.order, "truncation order")->check(CLI::Range(2, 12));
  app.add_option("--threads", threads, "worker threads")->check(CLI::Range(1u, 256u));
  app.add_option("--only", only, "run only these criteria");
  CLI11_PARSE(app, argc, argv);
  if (const char *cap = std::getenv("CRMW_THREADS"))
    threads = std::max(1u, std::min(threads, static_cast<unsigned>(std::strtoul(cap, nullptr, 10))));

  std::vector<crmw::CriterionResult> results;
  if (only.empty())
    results = crmw::run_acceptance(opts, threads);
  else
    for (int id : only)
      results.push_back(crmw::run_criterion(id, opts));

  int failed = 0;
  for (const auto &r : results) {
    std::printf("%s %2d %s: %s\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.detail.c_str());
    failed += r.pass ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed (seed %llu)\n", static_cast<int>(results.size()) - failed, results.size(),
              static_cast<unsigned long long>(opts.seed));
  return failed == 0 ? 0 : 1;
}
