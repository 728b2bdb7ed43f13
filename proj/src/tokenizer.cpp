#include "stylo/tokenizer.hpp"

#include <algorithm>
#include <cstdint>

namespace stylo {

const char* to_string(TokenKind k) {
    switch (k) {
    case TokenKind::Word: return "word";
    case TokenKind::Number: return "number";
    case TokenKind::Punctuation: return "punctuation";
    }
    return "?";
}

const char* to_string(Origin o) {
    return o == Origin::Real ? "real" : "generated";
}

namespace {

struct Codepoint {
    char32_t cp;
    std::size_t byte_len;
};

Codepoint decode_utf8(const std::string& s, std::size_t i) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    if (c < 0x80) return {c, 1};
    std::size_t len = 0;
    char32_t cp = 0;
    if ((c & 0xE0) == 0xC0) { len = 2; cp = c & 0x1F; }
    else if ((c & 0xF0) == 0xE0) { len = 3; cp = c & 0x0F; }
    else if ((c & 0xF8) == 0xF0) { len = 4; cp = c & 0x07; }
    else return {0xFFFD, 1};
    if (i + len > s.size()) return {0xFFFD, 1};
    for (std::size_t k = 1; k < len; ++k) {
        unsigned char cc = static_cast<unsigned char>(s[i + k]);
        if ((cc & 0xC0) != 0x80) return {0xFFFD, 1};
        cp = (cp << 6) | (cc & 0x3F);
    }
    return {cp, len};
}

void encode_utf8(char32_t cp, std::string& out) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

bool is_digit_cp(char32_t cp) { return cp >= '0' && cp <= '9'; }

// ASCII letters plus the Latin-1 / Latin Extended ranges used by the
// accented forms that show up in English political prose.
bool is_letter_cp(char32_t cp) {
    if ((cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z')) return true;
    if (cp == 0xD7 || cp == 0xF7) return false; // multiplication/division signs
    if (cp >= 0xC0 && cp <= 0x24F) return true;
    return false;
}

bool is_space_cp(char32_t cp) {
    return cp == ' ' || cp == '\t' || cp == '\n' || cp == '\r' || cp == '\f' ||
           cp == '\v' || cp == 0xA0 || cp == 0x2009 || cp == 0x202F;
}

char32_t normalize_cp(char32_t cp) {
    switch (cp) {
    case 0x2018: case 0x2019: case 0x02BC: return '\'';
    case 0x201C: case 0x201D: return '"';
    default: return cp;
    }
}

char32_t to_lower_cp(char32_t cp) {
    if (cp >= 'A' && cp <= 'Z') return cp + 32;
    if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 32;
    return cp;
}

std::vector<Codepoint> decode_all(const std::string& text, std::u32string& cps) {
    std::vector<Codepoint> raw;
    for (std::size_t i = 0; i < text.size();) {
        Codepoint c = decode_utf8(text, i);
        c.cp = normalize_cp(c.cp);
        raw.push_back(c);
        cps.push_back(c.cp);
        i += c.byte_len;
    }
    return raw;
}

} // namespace

std::string to_lower(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size();) {
        Codepoint c = decode_utf8(s, i);
        encode_utf8(to_lower_cp(c.cp), out);
        i += c.byte_len;
    }
    return out;
}

std::size_t letter_count(const std::string& s) {
    std::size_t n = 0;
    for (std::size_t i = 0; i < s.size();) {
        Codepoint c = decode_utf8(s, i);
        if (is_letter_cp(c.cp)) ++n;
        i += c.byte_len;
    }
    return n;
}

std::vector<Token> tokenize(const std::string& text) {
    std::u32string cps;
    decode_all(text, cps);

    std::vector<Token> out;
    const std::size_t n = cps.size();
    std::size_t i = 0;
    auto emit = [&](std::size_t from, std::size_t to, TokenKind kind) {
        Token t;
        t.kind = kind;
        t.index = out.size();
        for (std::size_t k = from; k < to; ++k) encode_utf8(cps[k], t.surface);
        out.push_back(std::move(t));
    };

    while (i < n) {
        char32_t cp = cps[i];
        if (is_space_cp(cp)) { ++i; continue; }
        if (is_letter_cp(cp)) {
            std::size_t j = i + 1;
            while (j < n) {
                if (is_letter_cp(cps[j])) { ++j; continue; }
                if ((cps[j] == '\'' || cps[j] == '-') && j + 1 < n &&
                    is_letter_cp(cps[j + 1])) { j += 2; continue; }
                break;
            }
            emit(i, j, TokenKind::Word);
            i = j;
            continue;
        }
        if (is_digit_cp(cp)) {
            std::size_t j = i + 1;
            while (j < n) {
                if (is_digit_cp(cps[j])) { ++j; continue; }
                if ((cps[j] == ',' || cps[j] == '.') && j + 1 < n &&
                    is_digit_cp(cps[j + 1])) { j += 2; continue; }
                break;
            }
            emit(i, j, TokenKind::Number);
            i = j;
            continue;
        }
        emit(i, i + 1, TokenKind::Punctuation);
        ++i;
    }
    return out;
}

const std::vector<std::string>& default_abbreviations() {
    static const std::vector<std::string> abbrevs = {
        "Mr", "Mrs", "Ms", "Dr", "St", "U.S", "Jr", "Sr", "vs", "etc",
    };
    return abbrevs;
}

namespace {

bool is_terminal(const Token& t) {
    if (t.kind != TokenKind::Punctuation) return false;
    return t.surface == "." || t.surface == "!" || t.surface == "?" ||
           t.surface == "…";
}

// Reassemble a dotted abbreviation ("U" "." "S") that the tokenizer split.
bool preceded_by_abbreviation(const std::vector<Token>& tokens, std::size_t punct_idx,
                              const std::vector<std::string>& abbrevs) {
    if (punct_idx == 0 || tokens[punct_idx].surface != ".") return false;
    const Token& prev = tokens[punct_idx - 1];
    if (!prev.is_word()) return false;
    if (letter_count(prev.surface) == 1) return true; // initial
    std::string joined = prev.surface;
    std::size_t k = punct_idx - 1;
    while (k >= 2 && tokens[k - 1].surface == "." && tokens[k - 2].is_word()) {
        joined = tokens[k - 2].surface + "." + joined;
        k -= 2;
    }
    for (const auto& a : abbrevs) {
        if (prev.surface == a || joined == a) return true;
        // entry given with trailing period, e.g. "Mr."
        if (!a.empty() && a.back() == '.' && prev.surface == a.substr(0, a.size() - 1))
            return true;
    }
    return false;
}

} // namespace

std::vector<Sentence> segment_sentences(const std::vector<Token>& tokens,
                                        const std::vector<std::string>& abbrevs) {
    std::vector<Sentence> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (is_terminal(tokens[i]) && !preceded_by_abbreviation(tokens, i, abbrevs)) {
            out.push_back({start, i + 1});
            start = i + 1;
        }
    }
    if (start < tokens.size()) out.push_back({start, tokens.size()});
    return out;
}

std::vector<Sentence> segment_sentences(const std::vector<Token>& tokens) {
    return segment_sentences(tokens, default_abbreviations());
}

} // namespace stylo
