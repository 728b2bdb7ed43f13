#include "stylo/categories.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include <json.hpp>

#include "stylo/errors.hpp"
#include "stylo/tokenizer.hpp"

namespace stylo {

void validate_wordlist(const Wordlist& list) {
    if (list.name.empty()) throw ValidationError("wordlist with empty name");
    if (list.patterns.empty())
        throw ValidationError("wordlist '" + list.name + "' has no entries");
    std::set<std::string> seen;
    for (const auto& p : list.patterns) {
        if (p.empty())
            throw ValidationError("wordlist '" + list.name + "' has an empty entry");
        auto star = p.find('*');
        if (star != std::string::npos && star != p.size() - 1)
            throw ValidationError("wordlist '" + list.name + "': '*' must be the final character in '" + p + "'");
        if (p == "*")
            throw ValidationError("wordlist '" + list.name + "': bare '*' entry");
        if (!seen.insert(p).second)
            throw ValidationError("wordlist '" + list.name + "': duplicate entry '" + p + "'");
    }
}

bool match_token(const Token& token, const Wordlist& list) {
    if (!token.is_word()) return false;
    const std::string surface = to_lower(token.surface);
    for (const auto& p : list.patterns) {
        if (p.back() == '*') {
            const std::size_t stem_len = p.size() - 1;
            if (surface.compare(0, stem_len, p, 0, stem_len) == 0) return true;
        } else if (surface == p) {
            return true;
        }
    }
    return false;
}

namespace {

std::vector<Wordlist> load_wordlists_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw LoadError("cannot open wordlist file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw LoadError("wordlist file " + path + ": " + e.what());
    }
    if (!j.is_object())
        throw LoadError("wordlist file " + path + ": expected a JSON object");
    std::vector<Wordlist> lists;
    for (const auto& [name, entries] : j.items()) {
        Wordlist w;
        w.name = name;
        for (const auto& e : entries)
            w.patterns.push_back(to_lower(e.get<std::string>()));
        lists.push_back(std::move(w));
    }
    return lists;
}

std::vector<Wordlist> load_wordlists_ini(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw LoadError("cannot open wordlist file: " + path);
    std::vector<Wordlist> lists;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        // trim
        auto b = line.find_first_not_of(" \t");
        auto e = line.find_last_not_of(" \t");
        if (b == std::string::npos) continue;
        line = line.substr(b, e - b + 1);
        if (line[0] == '#' || line[0] == ';') continue;
        if (line.front() == '[' && line.back() == ']') {
            lists.push_back({line.substr(1, line.size() - 2), {}});
        } else {
            if (lists.empty())
                throw LoadError("wordlist file " + path + ": entry before any [section]");
            lists.back().patterns.push_back(to_lower(line));
        }
    }
    return lists;
}

} // namespace

std::vector<Wordlist> load_wordlists(const std::string& path) {
    std::vector<Wordlist> lists;
    if (path.size() > 5 && path.compare(path.size() - 5, 5, ".json") == 0)
        lists = load_wordlists_json(path);
    else
        lists = load_wordlists_ini(path);
    for (const auto& w : lists) validate_wordlist(w);
    return lists;
}

std::vector<Wordlist> default_wordlists() {
    std::vector<Wordlist> lists = {
        {"Self", {"i", "me", "mine", "my", "myself"}},
        {"You", {"you", "your", "yours", "yourself", "yourselves"}},
        {"She", {"she", "her", "hers", "herself"}},
        {"He", {"he", "him", "his", "himself"}},
        {"We", {"we", "us", "our", "ours", "ourselves"}},
        {"They", {"they", "them", "their", "theirs", "themselves"}},
        // skeletons seeded from the published example words only
        {"Posemo", {"happy", "hope", "peace", "secur*", "freed*", "challeng*",
                    "promis*"}},
        {"Negemo", {"fear", "blam*"}},
        {"Symbolism", {"nation", "america", "democracy", "freedom", "peace",
                       "law", "government"}},
        {"Tenacity", {"was", "is", "will", "are", "be", "been"}},
        {"Blame", {"angry", "deceptive", "incompetent"}},
        {"Humans", {"family", "woman", "child*"}},
        {"Achieve", {"first", "plan", "win"}},
    };
    for (const auto& w : lists) validate_wordlist(w);
    return lists;
}

CategoryReport category_frequency(
    const std::vector<std::pair<std::string, DocSet>>& groups,
    const std::vector<Wordlist>& wordlists, bool word_denominator) {
    CategoryReport report;
    for (const auto& [group, docs] : groups) {
        std::size_t total = 0;
        for (const Document* d : docs)
            for (const auto& t : d->tokens)
                if (!word_denominator || t.is_word()) ++total;
        std::vector<const Wordlist*> ordered;
        for (const auto& w : wordlists) ordered.push_back(&w);
        std::stable_sort(ordered.begin(), ordered.end(),
                         [](const Wordlist* a, const Wordlist* b) {
                             return a->name < b->name;
                         });
        for (const Wordlist* w : ordered) {
            CategoryRow row;
            row.group = group;
            row.category = w->name;
            row.total = total;
            for (const Document* d : docs)
                for (const auto& t : d->tokens)
                    if (match_token(t, *w)) ++row.matched;
            row.rel_freq = total ? static_cast<double>(row.matched) / total : 0.0;
            report.rows.push_back(std::move(row));
        }
    }
    std::stable_sort(report.rows.begin(), report.rows.end(),
                     [](const CategoryRow& a, const CategoryRow& b) {
                         if (a.group != b.group) return a.group < b.group;
                         return a.category < b.category;
                     });
    return report;
}

} // namespace stylo
