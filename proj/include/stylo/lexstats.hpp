#ifndef STYLO_LEXSTATS_HPP
#define STYLO_LEXSTATS_HPP

#include <optional>
#include <string>
#include <vector>

#include "stylo/token.hpp"

namespace stylo {

using DocSet = std::vector<const Document*>;

struct StatReport {
    std::string group;
    double word_length_mean = 0.0;
    double big_word_ratio = 0.0;
    std::optional<double> ttr_segmented;
    std::optional<double> mattr_sliding;
    double msl = 0.0;
    double hapax_ratio = 0.0;
    std::size_t token_count = 0;
    std::size_t type_count = 0;
};

enum class FreqUnit { Surface, Lemma, Pos };

FreqUnit freq_unit_from_string(const std::string& s);
const char* to_string(FreqUnit u);

struct FrequencyRow {
    std::string key;
    std::size_t count = 0;
    double rel_freq = 0.0;
};

struct FrequencyTable {
    FreqUnit unit = FreqUnit::Surface;
    std::size_t total = 0; // denominator (all tokens)
    std::vector<FrequencyRow> rows;
};

// Mean letters per word token; numbers and punctuation excluded.
double mean_word_length(const DocSet& docs);

// Fraction of word tokens with six or more letters.
double big_word_ratio(const DocSet& docs);

// Mean type/token ratio over consecutive non-overlapping windows; the
// trailing remainder is discarded. All token kinds count; types are
// lowercased surfaces.
double ttr_segmented(const DocSet& docs, std::size_t window = 2000);

// Moving-average TTR over every overlapping window.
double mattr_sliding(const DocSet& docs, std::size_t window = 2000);

// Mean word+number tokens per sentence.
double mean_sentence_length(const DocSet& docs);

// Fraction of word types occurring exactly once.
double hapax_ratio(const DocSet& docs);

// Top-k keys by relative frequency over all tokens (punctuation included in
// both the denominator and the candidate keys). Ties break lexicographically.
FrequencyTable top_k_frequencies(const DocSet& docs, FreqUnit unit, std::size_t k);

// Relative frequency of every toolkit POS tag over all tokens. Tags the
// analysis excludes (symbols, numbers, foreign words, ...) are pooled under
// the "excluded" key, so the reported categories need not sum to 1.
FrequencyTable pos_distribution(const DocSet& docs);

// Full per-group report; TTR fields are empty when the pooled stream is
// shorter than the window.
StatReport stat_report(const std::string& group, const DocSet& docs,
                       std::size_t window = 2000);

// Pooled lowercased surfaces in document order (all token kinds).
std::vector<std::string> pooled_surfaces(const DocSet& docs);

} // namespace stylo

#endif
