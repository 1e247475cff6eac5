#pragma once

#include <string>
#include <vector>

namespace cjl {

// One expectation of a shipped fixture.
struct CorpusCheck {
    std::string case_name;
    std::string kind;  // truth, conditions, verdict, countermodel, derivation
    std::string query;
    std::string note;
    bool passed = false;
    std::string detail;
};

struct CorpusReport {
    std::vector<CorpusCheck> checks;

    bool ok() const;
    int passed() const;
    int passed(const std::string& kind, int* total) const;
};

// Reads <fixture_dir>/corpus.json; paths inside it are relative to fixture_dir.
CorpusReport run_corpus(const std::string& fixture_dir);

}  // namespace cjl
