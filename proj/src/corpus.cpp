#include "stylo/corpus.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "stylo/errors.hpp"
#include "stylo/tokenizer.hpp"

namespace fs = std::filesystem;

namespace stylo {

Origin origin_from_string(const std::string& s) {
    if (s == "real") return Origin::Real;
    if (s == "generated") return Origin::Generated;
    throw ValidationError("unknown origin '" + s + "' (expected real|generated)");
}

Corpus::Corpus(std::vector<Document> docs) : docs_(std::move(docs)) {
    std::set<std::string> seen;
    for (const auto& d : docs_) {
        if (!seen.insert(d.id).second)
            throw ValidationError("duplicate document id '" + d.id + "'");
    }
}

const Document* Corpus::find(const std::string& id) const {
    for (const auto& d : docs_)
        if (d.id == id) return &d;
    return nullptr;
}

void Partition::validate(const Corpus& corpus) const {
    if (p0.empty()) throw ValidationError("partition: P0 is empty");
    if (p1.empty()) throw ValidationError("partition: P1 is empty");
    for (const auto& id : p0) {
        if (p1.count(id))
            throw ValidationError("partition: '" + id + "' appears in both P0 and P1");
        if (!corpus.find(id))
            throw ValidationError("partition: unknown document id '" + id + "'");
    }
    for (const auto& id : p1)
        if (!corpus.find(id))
            throw ValidationError("partition: unknown document id '" + id + "'");
}

TagMap TagMap::builtin() {
    TagMap m;
    auto& t = m.table_;
    // Universal Dependencies UPOS
    t["PUNCT"] = "@punct"; // resolved by surface
    t["CCONJ"] = "conjunction"; t["SCONJ"] = "conjunction";
    t["DET"] = "article";
    t["ADP"] = "preposition";
    t["PRON"] = "pronoun";
    t["ADJ"] = "adjective";
    t["NOUN"] = "noun";
    t["PROPN"] = "name";
    t["ADV"] = "adverb";
    t["AUX"] = "modal";
    t["VERB"] = "verb";
    t["NUM"] = "excluded"; t["SYM"] = "excluded"; t["X"] = "excluded";
    t["INTJ"] = "excluded"; t["PART"] = "excluded";
    // Penn Treebank
    t["."] = "period"; t[","] = "comma";
    t[":"] = "excluded"; t["``"] = "excluded"; t["''"] = "excluded";
    t["("] = "excluded"; t[")"] = "excluded"; t["$"] = "excluded";
    t["#"] = "excluded"; t["HYPH"] = "excluded"; t["NFP"] = "excluded";
    t["CC"] = "conjunction";
    t["DT"] = "article"; t["PDT"] = "article";
    t["IN"] = "preposition";
    t["PRP"] = "pronoun"; t["PRP$"] = "pronoun"; t["WP"] = "pronoun";
    t["WP$"] = "pronoun"; t["WDT"] = "pronoun"; t["EX"] = "pronoun";
    t["JJ"] = "adjective"; t["JJR"] = "adjective"; t["JJS"] = "adjective";
    t["NN"] = "noun"; t["NNS"] = "noun";
    t["NNP"] = "name"; t["NNPS"] = "name";
    t["RB"] = "adverb"; t["RBR"] = "adverb"; t["RBS"] = "adverb";
    t["WRB"] = "adverb";
    t["MD"] = "modal";
    t["VB"] = "verb"; t["VBD"] = "verb"; t["VBG"] = "verb";
    t["VBN"] = "verb"; t["VBP"] = "verb"; t["VBZ"] = "verb";
    t["CD"] = "excluded"; t["FW"] = "excluded"; t["UH"] = "excluded";
    t["POS"] = "excluded"; t["TO"] = "excluded"; t["SYM"] = "excluded";
    t["LS"] = "excluded"; t["RP"] = "excluded";
    // identity for toolkit tags so pre-mapped input passes through
    for (const char* tag : {"period", "comma", "conjunction", "article",
                            "preposition", "pronoun", "adjective", "noun",
                            "name", "adverb", "modal", "verb", "excluded",
                            "other"})
        t[tag] = tag;
    return m;
}

TagMap TagMap::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw LoadError("cannot open tag map file: " + path);
    TagMap m;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos)
            throw LoadError(path + ":" + std::to_string(lineno) +
                            ": expected raw<TAB>toolkit tag");
        m.table_[line.substr(0, tab)] = line.substr(tab + 1);
    }
    return m;
}

std::string TagMap::map(const std::string& raw, const std::string& surface) const {
    auto it = table_.find(raw);
    if (it == table_.end()) {
        ++unknown_count_;
        return "other";
    }
    if (it->second == "@punct") {
        if (surface == "," ) return "comma";
        if (surface == "." || surface == "!" || surface == "?" || surface == "…")
            return "period";
        return "excluded";
    }
    return it->second;
}

bool is_excludable_tag(const std::string& tag) { return tag == "excluded"; }

std::string lookup_lemma(const std::string& s) {
    static const std::map<std::string, std::string> table = {
        {"we", "we"}, {"us", "we"}, {"our", "we"}, {"ours", "we"},
        {"ourselves", "we"},
        {"i", "i"}, {"me", "i"}, {"my", "i"}, {"mine", "i"}, {"myself", "i"},
        {"a", "an"}, {"an", "an"},
        {"the", "the"},
        {"be", "be"}, {"am", "be"}, {"is", "be"}, {"are", "be"},
        {"was", "be"}, {"were", "be"}, {"been", "be"}, {"being", "be"},
        {"have", "have"}, {"has", "have"}, {"had", "have"}, {"having", "have"},
        {"do", "do"}, {"does", "do"}, {"did", "do"}, {"doing", "do"},
        {"done", "do"},
        {"and", "and"}, {"or", "or"}, {"of", "of"}, {"to", "to"}, {"in", "in"},
        {"for", "for"}, {"on", "on"}, {"with", "with"}, {"that", "that"},
        {"this", "this"}, {"it", "it"}, {"not", "not"},
        {"you", "you"}, {"your", "you"}, {"yours", "you"},
        {"they", "they"}, {"them", "they"}, {"their", "they"},
        {"theirs", "they"},
        {"he", "he"}, {"him", "he"}, {"his", "he"},
        {"she", "she"}, {"her", "she"}, {"hers", "she"},
    };
    auto it = table.find(s);
    return it == table.end() ? std::string() : it->second;
}

std::string effective_lemma(const Token& t) {
    if (!t.lemma.empty()) return to_lower(t.lemma);
    if (t.kind != TokenKind::Word) return t.surface;
    return lookup_lemma(to_lower(t.surface));
}

Document parse_tagged(const std::string& path, const TagMap& tags) {
    std::ifstream in(path);
    if (!in) throw LoadError("cannot open tagged file: " + path);
    Document doc;
    std::string line;
    std::size_t lineno = 0;
    std::size_t sent_start = 0;
    auto close_sentence = [&] {
        if (doc.tokens.size() > sent_start) {
            doc.sentences.push_back({sent_start, doc.tokens.size()});
            sent_start = doc.tokens.size();
        }
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) { close_sentence(); continue; }
        auto t1 = line.find('\t');
        auto t2 = t1 == std::string::npos ? std::string::npos : line.find('\t', t1 + 1);
        if (t1 == std::string::npos || t2 == std::string::npos)
            throw LoadError(path + ":" + std::to_string(lineno) +
                            ": expected surface<TAB>pos<TAB>lemma");
        Token tok;
        tok.surface = line.substr(0, t1);
        std::string raw_pos = line.substr(t1 + 1, t2 - t1 - 1);
        tok.lemma = line.substr(t2 + 1);
        if (tok.surface.empty())
            throw LoadError(path + ":" + std::to_string(lineno) + ": empty surface");
        // kind from the surface, same classification the tokenizer applies
        auto sub = tokenize(tok.surface);
        tok.kind = sub.size() == 1 ? sub.front().kind : TokenKind::Word;
        tok.pos = tags.map(raw_pos, tok.surface);
        tok.index = doc.tokens.size();
        doc.tokens.push_back(std::move(tok));
    }
    close_sentence();
    return doc;
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) { out.push_back(cur); cur.clear(); }
        else cur.push_back(c);
    }
    out.push_back(cur);
    return out;
}

std::vector<ManifestEntry> read_manifest_tsv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw LoadError("cannot open manifest: " + path);
    std::string header;
    if (!std::getline(in, header)) throw LoadError("empty manifest: " + path);
    if (!header.empty() && header.back() == '\r') header.pop_back();
    auto cols = split(header, '\t');
    std::map<std::string, std::size_t> idx;
    for (std::size_t i = 0; i < cols.size(); ++i) idx[cols[i]] = i;
    for (const char* required : {"path", "id", "group", "origin", "format"})
        if (!idx.count(required))
            throw LoadError("manifest " + path + ": missing column '" +
                            std::string(required) + "'");
    std::vector<ManifestEntry> entries;
    std::string line;
    std::size_t lineno = 1;
    auto field = [&](const std::vector<std::string>& f, const char* name) {
        auto it = idx.find(name);
        if (it == idx.end() || it->second >= f.size()) return std::string();
        return f[it->second];
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto f = split(line, '\t');
        ManifestEntry e;
        e.path = field(f, "path");
        e.id = field(f, "id");
        e.group = field(f, "group");
        e.subgroup = field(f, "subgroup");
        e.origin = field(f, "origin");
        e.year = field(f, "year");
        e.format = field(f, "format");
        if (e.path.empty() || e.id.empty())
            throw LoadError("manifest " + path + ":" + std::to_string(lineno) +
                            ": path and id are required");
        entries.push_back(std::move(e));
    }
    return entries;
}

std::vector<ManifestEntry> read_manifest_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw LoadError("cannot open manifest: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw LoadError("manifest " + path + ": " + e.what());
    }
    if (!j.is_array()) throw LoadError("manifest " + path + ": expected a JSON array");
    std::vector<ManifestEntry> entries;
    for (const auto& rec : j) {
        ManifestEntry e;
        e.path = rec.value("path", "");
        e.id = rec.value("id", "");
        e.group = rec.value("group", "");
        e.subgroup = rec.value("subgroup", "");
        e.origin = rec.value("origin", "");
        if (rec.contains("year")) {
            if (rec["year"].is_number_integer())
                e.year = std::to_string(rec["year"].get<int>());
            else
                e.year = rec.value("year", "");
        }
        e.format = rec.value("format", "");
        if (e.path.empty() || e.id.empty())
            throw LoadError("manifest " + path + ": entry missing path or id");
        entries.push_back(std::move(e));
    }
    return entries;
}

} // namespace

Corpus load_manifest(const std::string& path, const TagMap& tags,
                     const std::vector<std::string>& abbrevs) {
    fs::path mpath(path);
    std::vector<ManifestEntry> entries;
    if (mpath.extension() == ".json")
        entries = read_manifest_json(path);
    else
        entries = read_manifest_tsv(path);

    std::vector<Document> docs;
    for (const auto& e : entries) {
        fs::path docpath = fs::path(e.path).is_absolute()
                               ? fs::path(e.path)
                               : mpath.parent_path() / e.path;
        if (!fs::exists(docpath))
            throw LoadError("manifest entry '" + e.id +
                            "': file not found: " + docpath.string());
        Document doc;
        if (e.format == "plain") {
            std::ifstream in(docpath);
            std::stringstream buf;
            buf << in.rdbuf();
            doc.tokens = tokenize(buf.str());
            doc.sentences = segment_sentences(doc.tokens, abbrevs);
        } else if (e.format == "tagged") {
            doc = parse_tagged(docpath.string(), tags);
        } else {
            throw ValidationError("manifest entry '" + e.id +
                                  "': unknown format '" + e.format +
                                  "' (expected plain|tagged)");
        }
        doc.id = e.id;
        doc.group = e.group;
        doc.subgroup = e.subgroup;
        doc.origin = origin_from_string(e.origin);
        if (!e.year.empty()) doc.year = std::stoi(e.year);
        docs.push_back(std::move(doc));
    }
    return Corpus(std::move(docs));
}

Corpus load_manifest(const std::string& path) {
    return load_manifest(path, TagMap::builtin(), default_abbreviations());
}

namespace {

std::string metadata_value(const Document& d, const std::string& key) {
    if (key == "group") return d.group;
    if (key == "subgroup") return d.subgroup;
    if (key == "origin") return to_string(d.origin);
    if (key == "year") return d.year ? std::to_string(*d.year) : std::string();
    if (key == "id") return d.id;
    throw ValidationError("unknown metadata key '" + key + "'");
}

} // namespace

std::string group_label(const Document& doc, const std::string& group_by) {
    std::string label;
    for (const auto& key : split(group_by, ',')) {
        std::string v = metadata_value(doc, key);
        if (v.empty()) continue;
        if (!label.empty()) label += '-';
        label += v;
    }
    return label;
}

std::vector<std::pair<std::string, std::vector<const Document*>>>
group_documents(const Corpus& corpus, const std::string& group_by) {
    std::map<std::string, std::vector<const Document*>> groups;
    for (const auto& d : corpus.documents())
        groups[group_label(d, group_by)].push_back(&d);
    return {groups.begin(), groups.end()};
}

std::vector<SummaryRow> corpus_summary(const Corpus& corpus, const std::string& group_by) {
    std::vector<SummaryRow> rows;
    for (const auto& [label, docs] : group_documents(corpus, group_by)) {
        SummaryRow row;
        row.label = label;
        row.doc_count = docs.size();
        std::set<std::string> types;
        for (const Document* d : docs) {
            row.token_count += d->tokens.size();
            for (const auto& t : d->tokens)
                if (t.is_word()) types.insert(to_lower(t.surface));
        }
        row.type_count = types.size();
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<const Document*> select(const Corpus& corpus, const std::string& selector) {
    std::vector<std::pair<std::string, std::string>> conds;
    for (const auto& part : split(selector, ',')) {
        auto eq = part.find('=');
        if (eq == std::string::npos)
            throw ValidationError("bad selector '" + part + "' (expected key=value)");
        conds.emplace_back(part.substr(0, eq), part.substr(eq + 1));
    }
    std::vector<const Document*> out;
    for (const auto& d : corpus.documents()) {
        bool match = true;
        for (const auto& [k, v] : conds)
            if (metadata_value(d, k) != v) { match = false; break; }
        if (match) out.push_back(&d);
    }
    return out;
}

std::vector<const Document*> all_documents(const Corpus& corpus) {
    std::vector<const Document*> out;
    for (const auto& d : corpus.documents()) out.push_back(&d);
    return out;
}

} // namespace stylo
