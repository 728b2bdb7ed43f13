#ifndef STYLO_TOKENIZER_HPP
#define STYLO_TOKENIZER_HPP

#include <string>
#include <vector>

#include "stylo/token.hpp"

namespace stylo {

// Tokenization rules:
//  - maximal letter runs form one word; apostrophes and hyphens stay inside
//    a word when flanked by letters on both sides ("don't", "state-of-the-art")
//  - maximal digit runs form one number; ',' and '.' stay inside when flanked
//    by digits on both sides ("1,000", "3.5")
//  - every other non-whitespace character is its own punctuation token
// Curly quotes are normalized to their ASCII forms before tokenizing.
std::vector<Token> tokenize(const std::string& text);

// Boundary after '.', '!', '?' or the ellipsis, unless the preceding word is
// a known abbreviation or a single letter (initials, "U.S."). A trailing
// partial sentence is closed at end of input.
std::vector<Sentence> segment_sentences(const std::vector<Token>& tokens,
                                        const std::vector<std::string>& abbreviations);

std::vector<Sentence> segment_sentences(const std::vector<Token>& tokens);

// Bundled abbreviation list (overridable via a file, one entry per line).
const std::vector<std::string>& default_abbreviations();

// Unicode helpers shared with the statistics code.
std::string to_lower(const std::string& s);
std::size_t letter_count(const std::string& s);

} // namespace stylo

#endif
