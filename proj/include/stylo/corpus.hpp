#ifndef STYLO_CORPUS_HPP
#define STYLO_CORPUS_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "stylo/token.hpp"

namespace stylo {

struct ManifestEntry {
    std::string path;
    std::string id;
    std::string group;
    std::string subgroup;
    std::string origin;
    std::string year;   // empty when absent
    std::string format; // "plain" | "tagged"
};

class Corpus {
public:
    Corpus() = default;
    explicit Corpus(std::vector<Document> docs);

    const std::vector<Document>& documents() const { return docs_; }
    const Document* find(const std::string& id) const;
    bool empty() const { return docs_.empty(); }
    std::size_t size() const { return docs_.size(); }

private:
    std::vector<Document> docs_;
};

struct Partition {
    std::set<std::string> p0;
    std::set<std::string> p1;

    // Throws ValidationError unless p0/p1 are disjoint, non-empty and
    // contained in the corpus ids.
    void validate(const Corpus& corpus) const;
};

// Maps raw tagger output (Penn Treebank or Universal Dependencies tags) onto
// the toolkit tagset {period, comma, conjunction, article, preposition,
// pronoun, adjective, noun, name, adverb, modal, verb, excluded, other}.
class TagMap {
public:
    static TagMap builtin();
    static TagMap from_file(const std::string& path);

    // Unknown tags map to "other" and bump the warning counter.
    std::string map(const std::string& raw, const std::string& surface) const;
    std::size_t unknown_count() const { return unknown_count_; }

private:
    std::map<std::string, std::string> table_;
    mutable std::size_t unknown_count_ = 0;
};

bool is_excludable_tag(const std::string& toolkit_tag);

// Small bundled lemma table for English function words; returns the surface's
// lemma or the empty string when the word is not covered.
std::string lookup_lemma(const std::string& lowercased_surface);

// Lemma of a token for frequency/specificity purposes: the annotated lemma if
// present, the bundled lookup for function words, the surface itself for
// numbers and punctuation. Empty string means no lemma is available.
std::string effective_lemma(const Token& t);

// TSV or JSON manifest (detected by extension); paths resolved relative to
// the manifest's directory.
Corpus load_manifest(const std::string& path);
Corpus load_manifest(const std::string& path, const TagMap& tags,
                     const std::vector<std::string>& abbreviations);

// Vertical file: surface TAB pos TAB lemma, blank line = sentence break.
Document parse_tagged(const std::string& path, const TagMap& tags);

struct SummaryRow {
    std::string label;
    std::size_t doc_count = 0;
    std::size_t token_count = 0;
    std::size_t type_count = 0; // distinct lowercased word surfaces
};

// group_by is a comma-separated list of metadata keys out of
// {group, subgroup, origin, year, id}; labels join the values with '-'.
std::vector<SummaryRow> corpus_summary(const Corpus& corpus, const std::string& group_by);

// Group label of a document under a group_by expression.
std::string group_label(const Document& doc, const std::string& group_by);

// Documents matching key=value[,key=value] selectors (same keys as group_by).
std::vector<const Document*> select(const Corpus& corpus, const std::string& selector);

std::vector<const Document*> all_documents(const Corpus& corpus);

// Grouped documents in deterministic label order.
std::vector<std::pair<std::string, std::vector<const Document*>>>
group_documents(const Corpus& corpus, const std::string& group_by);

} // namespace stylo

#endif
