#ifndef STYLO_TOKEN_HPP
#define STYLO_TOKEN_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace stylo {

enum class TokenKind { Word, Number, Punctuation };

const char* to_string(TokenKind k);

struct Token {
    std::string surface;
    TokenKind kind = TokenKind::Word;
    std::string lemma; // empty when absent
    std::string pos;   // toolkit tag, empty when absent
    std::size_t index = 0;

    bool is_word() const { return kind == TokenKind::Word; }
    bool is_punct() const { return kind == TokenKind::Punctuation; }
};

// Half-open token span [begin, end).
struct Sentence {
    std::size_t begin = 0;
    std::size_t end = 0;
    std::size_t size() const { return end - begin; }
};

enum class Origin { Real, Generated };

const char* to_string(Origin o);
Origin origin_from_string(const std::string& s);

struct Document {
    std::string id;
    std::string group;
    std::string subgroup; // empty when absent
    Origin origin = Origin::Real;
    std::optional<int> year;
    std::vector<Token> tokens;
    std::vector<Sentence> sentences;
};

} // namespace stylo

#endif
