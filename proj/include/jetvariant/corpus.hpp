#pragma once

#include <string>
#include <vector>

namespace jetvariant {

struct CheckOutcome {
  std::string name;
  std::string kind;
  bool pass = false;
  std::string detail;
};

struct CaseReport {
  std::string name;
  bool pass = true;
  std::vector<CheckOutcome> checks;
};

struct CorpusReport {
  bool pass = true;
  std::vector<CaseReport> cases;
};

/// Runs the bundled scenario corpus from data_dir. filter selects cases by
/// substring; fast skips the checks marked extended. Cases run in parallel;
/// report ordering is by declaration.
CorpusReport run_corpus(const std::string& data_dir, const std::string& filter, bool fast);

std::vector<std::string> corpus_case_names();

}  // namespace jetvariant
