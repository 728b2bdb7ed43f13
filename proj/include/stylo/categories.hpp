#ifndef STYLO_CATEGORIES_HPP
#define STYLO_CATEGORIES_HPP

#include <string>
#include <vector>

#include "stylo/lexstats.hpp"
#include "stylo/token.hpp"

namespace stylo {

// A named wordlist category. Entries are lowercase literals or stems ending
// in '*' ("challeng*"), where the stem matches zero or more further letters.
struct Wordlist {
    std::string name;
    std::vector<std::string> patterns;
};

struct CategoryRow {
    std::string group;
    std::string category;
    std::size_t matched = 0;
    std::size_t total = 0;
    double rel_freq = 0.0;
};

struct CategoryReport {
    std::vector<CategoryRow> rows; // ordered by (group, category)
};

// JSON object {name: [entries]} or INI-style sections, detected by extension.
std::vector<Wordlist> load_wordlists(const std::string& path);

// Pronoun categories of the toolkit plus skeleton emotional/rhetorical lists
// seeded from their published example words. The skeletons are deliberately
// small; full LIWC/Hart dictionaries are licensed and must be user-supplied.
std::vector<Wordlist> default_wordlists();

// Throws ValidationError on empty lists, duplicate patterns or a '*' that is
// not the final character.
void validate_wordlist(const Wordlist& list);

// True iff a word token's lowercased surface matches a literal or stem entry.
bool match_token(const Token& token, const Wordlist& list);

// Matched word-token occurrences per category and group. The denominator is
// every token (punctuation included) unless word_denominator is set.
CategoryReport category_frequency(
    const std::vector<std::pair<std::string, DocSet>>& groups,
    const std::vector<Wordlist>& wordlists, bool word_denominator = false);

} // namespace stylo

#endif
