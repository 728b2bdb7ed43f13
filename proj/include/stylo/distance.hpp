#ifndef STYLO_DISTANCE_HPP
#define STYLO_DISTANCE_HPP

#include <string>
#include <vector>

#include "stylo/corpus.hpp"
#include "stylo/lexstats.hpp"

namespace stylo {

struct DistanceMatrix {
    std::vector<std::string> labels;
    std::vector<std::vector<double>> d; // symmetric, zero diagonal, [0,1]

    std::size_t size() const { return labels.size(); }
    void validate() const; // throws ValidationError on shape/range violations
};

// Labbé intertextual distance: half the L1 distance between the two texts'
// frequency profiles after scaling the longer text down to the shorter one's
// length. Streams are sequences of terms (lowercased surfaces or lemmas).
// Throws when either stream is empty, or when the length ratio exceeds
// max_ratio and enforce_ratio is set.
double labbe_distance(const std::vector<std::string>& a,
                      const std::vector<std::string>& b,
                      double max_ratio = 8.0, bool enforce_ratio = true);

// Term stream of a document set under the given unit.
std::vector<std::string> term_stream(const DocSet& docs, FreqUnit unit);

// Pairwise Labbé distances between pooled group streams.
DistanceMatrix distance_matrix(const Corpus& corpus, const std::string& group_by,
                               FreqUnit unit = FreqUnit::Surface,
                               double max_ratio = 8.0, bool enforce_ratio = true);

DistanceMatrix read_matrix_tsv(const std::string& path);
std::string matrix_to_tsv(const DistanceMatrix& m);

} // namespace stylo

#endif
