#ifndef STYLO_SPECIFICITY_HPP
#define STYLO_SPECIFICITY_HPP

#include <string>
#include <vector>

#include "stylo/corpus.hpp"
#include "stylo/lexstats.hpp"

namespace stylo {

struct TermScore {
    std::string term;
    std::size_t tf0 = 0;
    std::size_t tf1 = 0;
    double p = 0.0;         // (tf0+tf1)/n
    double expected0 = 0.0; // n0 * p
    double z = 0.0;
};

struct SpecificityReport {
    Partition partition;
    double threshold = 3.0;
    std::size_t n0 = 0;
    std::size_t n1 = 0;
    std::vector<TermScore> overused;  // z > threshold, z descending
    std::vector<TermScore> underused; // z < -threshold, z ascending
};

// Probability that a random draw from the whole corpus is this term.
double term_probability(std::size_t tf0, std::size_t tf1, std::size_t n);

// Standardized binomial deviation of tf0 from its expectation n0*p.
// Returns NaN when p is 0 or 1 (score undefined; caller drops the term).
double z_score(std::size_t tf0, std::size_t n0, std::size_t tf1, std::size_t n1);

// Scores the pooled vocabulary (lowercased, all token kinds) of a corpus
// partition; terms beyond |threshold| kept, truncated to top_k per direction.
// unit=Lemma requires annotations (the bundled function-word table fills gaps).
SpecificityReport characteristic_vocabulary(const Corpus& corpus,
                                            const Partition& partition,
                                            FreqUnit unit,
                                            double threshold = 3.0,
                                            std::size_t top_k = 10);

struct TypicalSentence {
    std::string doc_id;
    std::size_t sentence_index = 0;
    std::size_t overused_count = 0;
    double density = 0.0; // overused_count / sentence length
    std::string text;     // overused tokens wrapped in [brackets]
};

// Sentences of P0 ranked by overused-term occurrences, then density, then
// document order.
std::vector<TypicalSentence> typical_sentences(const Corpus& corpus,
                                               const Partition& partition,
                                               const SpecificityReport& report,
                                               FreqUnit unit,
                                               std::size_t top_k);

} // namespace stylo

#endif
