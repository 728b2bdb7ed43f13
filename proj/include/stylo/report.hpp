#ifndef STYLO_REPORT_HPP
#define STYLO_REPORT_HPP

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "stylo/categories.hpp"
#include "stylo/corpus.hpp"
#include "stylo/lexstats.hpp"
#include "stylo/table.hpp"

namespace stylo {

struct ReportSpec {
    std::string group_by = "group";
    std::optional<std::string> baseline; // column other groups are tested against
    double alpha = 0.01;
    std::size_t window = 2000;
    double threshold = 3.0;
    std::size_t top_k = 10;
    double max_ratio = 8.0;
    bool enforce_ratio = true;
    FreqUnit unit = FreqUnit::Lemma;
    bool word_denominator = false;
    std::vector<Wordlist> wordlists; // empty = bundled defaults
    std::set<std::string> sections;  // empty = all
    bool strict = false;

    void validate(const Corpus& corpus) const;
};

// Section tables; these back both the report bundle and the CLI subcommands.
Table summary_table(const Corpus& corpus, const std::string& group_by);
Table topk_table(const Corpus& corpus, const ReportSpec& spec);
Table stats_table(const Corpus& corpus, const ReportSpec& spec);
Table pos_table(const Corpus& corpus, const ReportSpec& spec);
Table categories_table(const Corpus& corpus, const ReportSpec& spec);
Table specificity_table(const Corpus& corpus, const ReportSpec& spec);

struct ReportBundle {
    std::vector<std::string> files;   // emitted file names, manifest excluded
    std::vector<std::string> skipped; // sections skipped with their reasons
};

extern const std::vector<std::string> kAllSections;

// Emits every enabled section under out_dir plus a manifest.json listing
// parameters and file digests. Deterministic: identical inputs produce
// byte-identical bundles.
ReportBundle run_report(const Corpus& corpus, const ReportSpec& spec,
                        const std::string& out_dir);

} // namespace stylo

#endif
