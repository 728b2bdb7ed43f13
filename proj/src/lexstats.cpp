#include "stylo/lexstats.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

#include "stylo/corpus.hpp"
#include "stylo/errors.hpp"
#include "stylo/tokenizer.hpp"

namespace stylo {

FreqUnit freq_unit_from_string(const std::string& s) {
    if (s == "surface") return FreqUnit::Surface;
    if (s == "lemma") return FreqUnit::Lemma;
    if (s == "pos") return FreqUnit::Pos;
    throw ValidationError("unknown unit '" + s + "' (expected surface|lemma|pos)");
}

const char* to_string(FreqUnit u) {
    switch (u) {
    case FreqUnit::Surface: return "surface";
    case FreqUnit::Lemma: return "lemma";
    case FreqUnit::Pos: return "pos";
    }
    return "?";
}

std::vector<std::string> pooled_surfaces(const DocSet& docs) {
    std::vector<std::string> out;
    for (const Document* d : docs)
        for (const auto& t : d->tokens) out.push_back(to_lower(t.surface));
    return out;
}

double mean_word_length(const DocSet& docs) {
    std::size_t letters = 0, words = 0;
    for (const Document* d : docs)
        for (const auto& t : d->tokens)
            if (t.is_word()) { letters += letter_count(t.surface); ++words; }
    if (words == 0) throw UndefinedStatistic("mean_word_length: no word tokens");
    return static_cast<double>(letters) / static_cast<double>(words);
}

double big_word_ratio(const DocSet& docs) {
    std::size_t big = 0, words = 0;
    for (const Document* d : docs)
        for (const auto& t : d->tokens)
            if (t.is_word()) {
                ++words;
                if (letter_count(t.surface) >= 6) ++big;
            }
    if (words == 0) throw UndefinedStatistic("big_word_ratio: no word tokens");
    return static_cast<double>(big) / static_cast<double>(words);
}

namespace {

double window_ttr(const std::vector<std::string>& stream, std::size_t from,
                  std::size_t window) {
    std::set<std::string> types(stream.begin() + from,
                                stream.begin() + from + window);
    return static_cast<double>(types.size()) / static_cast<double>(window);
}

void require_window(const std::vector<std::string>& stream, std::size_t window,
                    const char* who) {
    if (window == 0) throw ValidationError(std::string(who) + ": window must be positive");
    if (stream.size() < window)
        throw UndefinedStatistic(std::string(who) + ": stream has " +
                                 std::to_string(stream.size()) +
                                 " tokens, needs at least " + std::to_string(window));
}

} // namespace

double ttr_segmented(const DocSet& docs, std::size_t window) {
    auto stream = pooled_surfaces(docs);
    require_window(stream, window, "ttr_segmented");
    double sum = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 0; i + window <= stream.size(); i += window) {
        sum += window_ttr(stream, i, window);
        ++n;
    }
    return sum / static_cast<double>(n);
}

double mattr_sliding(const DocSet& docs, std::size_t window) {
    auto stream = pooled_surfaces(docs);
    require_window(stream, window, "mattr_sliding");
    // incremental multiset update instead of re-counting each window
    std::unordered_map<std::string, std::size_t> counts;
    std::size_t distinct = 0;
    for (std::size_t i = 0; i < window; ++i)
        if (counts[stream[i]]++ == 0) ++distinct;
    double sum = static_cast<double>(distinct);
    std::size_t windows = 1;
    for (std::size_t i = window; i < stream.size(); ++i) {
        if (counts[stream[i]]++ == 0) ++distinct;
        auto& old = counts[stream[i - window]];
        if (--old == 0) --distinct;
        sum += static_cast<double>(distinct);
        ++windows;
    }
    return sum / static_cast<double>(windows) / static_cast<double>(window);
}

double mean_sentence_length(const DocSet& docs) {
    std::size_t sentences = 0, counted = 0;
    for (const Document* d : docs) {
        sentences += d->sentences.size();
        for (const auto& t : d->tokens)
            if (!t.is_punct()) ++counted;
    }
    if (sentences == 0) throw UndefinedStatistic("mean_sentence_length: no sentences");
    return static_cast<double>(counted) / static_cast<double>(sentences);
}

double hapax_ratio(const DocSet& docs) {
    std::map<std::string, std::size_t> counts;
    for (const Document* d : docs)
        for (const auto& t : d->tokens)
            if (t.is_word()) ++counts[to_lower(t.surface)];
    if (counts.empty()) throw UndefinedStatistic("hapax_ratio: no word tokens");
    std::size_t hapax = 0;
    for (const auto& [_, c] : counts)
        if (c == 1) ++hapax;
    return static_cast<double>(hapax) / static_cast<double>(counts.size());
}

namespace {

std::string token_key(const Token& t, FreqUnit unit) {
    switch (unit) {
    case FreqUnit::Surface:
        return to_lower(t.surface);
    case FreqUnit::Lemma: {
        std::string lemma = effective_lemma(t);
        if (lemma.empty())
            throw ValidationError("missing lemma annotation on token '" + t.surface +
                                  "' (index " + std::to_string(t.index) + ")");
        return lemma;
    }
    case FreqUnit::Pos:
        if (t.pos.empty())
            throw ValidationError("missing POS annotation on token '" + t.surface +
                                  "' (index " + std::to_string(t.index) + ")");
        return t.pos;
    }
    return {};
}

} // namespace

FrequencyTable top_k_frequencies(const DocSet& docs, FreqUnit unit, std::size_t k) {
    std::map<std::string, std::size_t> counts;
    std::size_t total = 0;
    for (const Document* d : docs)
        for (const auto& t : d->tokens) {
            ++counts[token_key(t, unit)];
            ++total;
        }
    std::vector<FrequencyRow> rows;
    for (const auto& [key, c] : counts)
        rows.push_back({key, c, total ? static_cast<double>(c) / total : 0.0});
    std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        if (a.count != b.count) return a.count > b.count;
        return a.key < b.key;
    });
    if (rows.size() > k) rows.resize(k);
    FrequencyTable table;
    table.unit = unit;
    table.total = total;
    table.rows = std::move(rows);
    return table;
}

FrequencyTable pos_distribution(const DocSet& docs) {
    std::map<std::string, std::size_t> counts;
    std::size_t total = 0;
    for (const Document* d : docs)
        for (const auto& t : d->tokens) {
            ++counts[token_key(t, FreqUnit::Pos)];
            ++total;
        }
    FrequencyTable table;
    table.unit = FreqUnit::Pos;
    table.total = total;
    for (const auto& [key, c] : counts)
        table.rows.push_back({key, c, total ? static_cast<double>(c) / total : 0.0});
    std::stable_sort(table.rows.begin(), table.rows.end(),
                     [](const auto& a, const auto& b) {
                         if (a.count != b.count) return a.count > b.count;
                         return a.key < b.key;
                     });
    return table;
}

StatReport stat_report(const std::string& group, const DocSet& docs,
                       std::size_t window) {
    StatReport r;
    r.group = group;
    r.word_length_mean = mean_word_length(docs);
    r.big_word_ratio = big_word_ratio(docs);
    r.msl = mean_sentence_length(docs);
    r.hapax_ratio = hapax_ratio(docs);
    std::set<std::string> types;
    for (const Document* d : docs) {
        r.token_count += d->tokens.size();
        for (const auto& t : d->tokens)
            if (t.is_word()) types.insert(to_lower(t.surface));
    }
    r.type_count = types.size();
    try {
        r.ttr_segmented = ttr_segmented(docs, window);
        r.mattr_sliding = mattr_sliding(docs, window);
    } catch (const UndefinedStatistic&) {
        // stream shorter than the window: TTR columns stay empty
    }
    return r;
}

} // namespace stylo
