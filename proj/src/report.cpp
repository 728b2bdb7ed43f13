#include "stylo/report.hpp"

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>

#include <json.hpp>

#include "stylo/distance.hpp"
#include "stylo/errors.hpp"
#include "stylo/specificity.hpp"
#include "stylo/stattests.hpp"
#include "stylo/tree.hpp"

namespace fs = std::filesystem;

namespace stylo {

const std::vector<std::string> kAllSections = {
    "summary", "topk", "stats", "pos", "categories", "specificity", "distance",
};

void ReportSpec::validate(const Corpus& corpus) const {
    if (alpha <= 0.0 || alpha >= 1.0)
        throw ValidationError("report: alpha must lie in (0,1)");
    for (const auto& s : sections)
        if (std::find(kAllSections.begin(), kAllSections.end(), s) == kAllSections.end())
            throw ValidationError("report: unknown section '" + s + "'");
    if (baseline) {
        bool found = false;
        for (const auto& [label, _] : group_documents(corpus, group_by))
            if (label == *baseline) { found = true; break; }
        if (!found)
            throw ValidationError("report: baseline group '" + *baseline +
                                  "' not present in the corpus");
    }
}

Table summary_table(const Corpus& corpus, const std::string& group_by) {
    Table t;
    t.columns = {"group", "documents", "tokens", "types"};
    for (const auto& row : corpus_summary(corpus, group_by))
        t.add_row({row.label, std::to_string(row.doc_count),
                   std::to_string(row.token_count), std::to_string(row.type_count)});
    return t;
}

namespace {

struct GroupCounts {
    std::map<std::string, std::size_t> counts;
    std::size_t total = 0;
};

std::string sig_mark(const TestResult& r) { return r.significant ? "*" : ""; }

// Proportion test columns (z, p, significant) for count/total vs the
// baseline's count/total of the same key; empty for the baseline itself or
// when the test is undefined.
std::vector<std::string> proportion_cells(std::size_t count, std::size_t total,
                                          const GroupCounts* baseline,
                                          const std::string& key, bool is_baseline,
                                          double alpha) {
    if (is_baseline || baseline == nullptr) return {"", "", ""};
    std::size_t bcount = 0;
    if (auto it = baseline->counts.find(key); it != baseline->counts.end())
        bcount = it->second;
    try {
        TestResult r = two_proportion_test(count, total, bcount, baseline->total, alpha);
        return {format_real(r.statistic), format_real(r.p_value), sig_mark(r)};
    } catch (const UndefinedStatistic&) {
        return {"", "", ""};
    }
}

} // namespace

Table topk_table(const Corpus& corpus, const ReportSpec& spec) {
    auto groups = group_documents(corpus, spec.group_by);
    std::map<std::string, GroupCounts> full_counts;
    std::map<std::string, FrequencyTable> tops;
    for (const auto& [label, docs] : groups) {
        // full distribution for the tests, top-k for the rows
        FrequencyTable all = top_k_frequencies(docs, spec.unit,
                                               std::numeric_limits<std::size_t>::max());
        GroupCounts gc;
        gc.total = all.total;
        for (const auto& row : all.rows) gc.counts[row.key] = row.count;
        full_counts[label] = std::move(gc);
        tops[label] = top_k_frequencies(docs, spec.unit, spec.top_k);
    }
    const GroupCounts* baseline =
        spec.baseline ? &full_counts.at(*spec.baseline) : nullptr;

    Table t;
    t.columns = {"group", "rank", "key", "count", "total", "rel_freq",
                 "z", "p_value", "significant"};
    for (const auto& [label, docs] : groups) {
        const auto& table = tops.at(label);
        for (std::size_t i = 0; i < table.rows.size(); ++i) {
            const auto& row = table.rows[i];
            auto cells = proportion_cells(row.count, table.total, baseline, row.key,
                                          spec.baseline && label == *spec.baseline,
                                          spec.alpha);
            t.add_row({label, std::to_string(i + 1), row.key,
                       std::to_string(row.count), std::to_string(table.total),
                       format_real(row.rel_freq), cells[0], cells[1], cells[2]});
        }
    }
    return t;
}

namespace {

// Per-document sample values for the t-tests behind the stats table.
struct GroupSamples {
    std::vector<double> word_length, big_word, mattr, msl;
};

GroupSamples collect_samples(const DocSet& docs, std::size_t window) {
    GroupSamples s;
    for (const Document* d : docs) {
        DocSet one = {d};
        try { s.word_length.push_back(mean_word_length(one)); }
        catch (const UndefinedStatistic&) {}
        try { s.big_word.push_back(big_word_ratio(one)); }
        catch (const UndefinedStatistic&) {}
        try { s.msl.push_back(mean_sentence_length(one)); }
        catch (const UndefinedStatistic&) {}
        try { s.mattr.push_back(ttr_segmented(one, window)); }
        catch (const UndefinedStatistic&) {}
    }
    return s;
}

std::vector<std::string> welch_cells(const std::vector<double>& a,
                                     const std::vector<double>& b, double alpha) {
    try {
        TestResult r = welch_t_test(a, b, alpha);
        return {format_real(r.p_value), sig_mark(r)};
    } catch (const UndefinedStatistic&) {
        return {"", ""};
    }
}

} // namespace

Table stats_table(const Corpus& corpus, const ReportSpec& spec) {
    auto groups = group_documents(corpus, spec.group_by);
    std::map<std::string, GroupSamples> samples;
    for (const auto& [label, docs] : groups)
        samples[label] = collect_samples(docs, spec.window);
    const GroupSamples* baseline =
        spec.baseline ? &samples.at(*spec.baseline) : nullptr;

    Table t;
    t.columns = {"group", "documents", "tokens", "types",
                 "word_length", "big_word_ratio", "ttr_segmented",
                 "mattr_sliding", "msl", "hapax_ratio",
                 "word_length_p", "word_length_sig", "big_word_p", "big_word_sig",
                 "ttr_p", "ttr_sig", "msl_p", "msl_sig"};
    for (const auto& [label, docs] : groups) {
        StatReport r = stat_report(label, docs, spec.window);
        std::vector<std::string> wl = {"", ""}, bw = {"", ""}, ttr = {"", ""},
                                 msl = {"", ""};
        if (baseline && label != *spec.baseline) {
            const GroupSamples& s = samples.at(label);
            wl = welch_cells(s.word_length, baseline->word_length, spec.alpha);
            bw = welch_cells(s.big_word, baseline->big_word, spec.alpha);
            ttr = welch_cells(s.mattr, baseline->mattr, spec.alpha);
            msl = welch_cells(s.msl, baseline->msl, spec.alpha);
        }
        t.add_row({label, std::to_string(docs.size()),
                   std::to_string(r.token_count), std::to_string(r.type_count),
                   format_real(r.word_length_mean), format_real(r.big_word_ratio),
                   format_real(r.ttr_segmented), format_real(r.mattr_sliding),
                   format_real(r.msl), format_real(r.hapax_ratio),
                   wl[0], wl[1], bw[0], bw[1], ttr[0], ttr[1], msl[0], msl[1]});
    }
    return t;
}

Table pos_table(const Corpus& corpus, const ReportSpec& spec) {
    auto groups = group_documents(corpus, spec.group_by);
    std::map<std::string, GroupCounts> counts;
    for (const auto& [label, docs] : groups) {
        FrequencyTable table = pos_distribution(docs);
        GroupCounts gc;
        gc.total = table.total;
        for (const auto& row : table.rows) gc.counts[row.key] = row.count;
        counts[label] = std::move(gc);
    }
    const GroupCounts* baseline =
        spec.baseline ? &counts.at(*spec.baseline) : nullptr;

    Table t;
    t.columns = {"group", "pos", "count", "total", "rel_freq", "excluded",
                 "z", "p_value", "significant"};
    for (const auto& [label, docs] : groups) {
        const GroupCounts& gc = counts.at(label);
        for (const auto& [tag, count] : gc.counts) {
            auto cells = proportion_cells(count, gc.total, baseline, tag,
                                          spec.baseline && label == *spec.baseline,
                                          spec.alpha);
            t.add_row({label, tag, std::to_string(count), std::to_string(gc.total),
                       format_real(gc.total ? static_cast<double>(count) / gc.total : 0.0),
                       is_excludable_tag(tag) ? "yes" : "",
                       cells[0], cells[1], cells[2]});
        }
    }
    return t;
}

Table categories_table(const Corpus& corpus, const ReportSpec& spec) {
    auto grouped = group_documents(corpus, spec.group_by);
    std::vector<std::pair<std::string, DocSet>> groups(grouped.begin(), grouped.end());
    const auto& lists = spec.wordlists.empty() ? default_wordlists() : spec.wordlists;
    CategoryReport report = category_frequency(groups, lists, spec.word_denominator);

    std::map<std::string, std::map<std::string, const CategoryRow*>> by_group;
    for (const auto& row : report.rows) by_group[row.group][row.category] = &row;

    Table t;
    t.columns = {"group", "category", "matched", "total", "rel_freq",
                 "z", "p_value", "significant"};
    for (const auto& row : report.rows) {
        std::vector<std::string> cells = {"", "", ""};
        if (spec.baseline && row.group != *spec.baseline) {
            const CategoryRow* base = by_group.at(*spec.baseline).at(row.category);
            try {
                TestResult r = two_proportion_test(row.matched, row.total,
                                                   base->matched, base->total,
                                                   spec.alpha);
                cells = {format_real(r.statistic), format_real(r.p_value), sig_mark(r)};
            } catch (const UndefinedStatistic&) {
            }
        }
        t.add_row({row.group, row.category, std::to_string(row.matched),
                   std::to_string(row.total), format_real(row.rel_freq),
                   cells[0], cells[1], cells[2]});
    }
    return t;
}

Table specificity_table(const Corpus& corpus, const ReportSpec& spec) {
    auto groups = group_documents(corpus, spec.group_by);
    Table t;
    t.columns = {"group", "direction", "rank", "term", "tf0", "tf1", "p",
                 "expected", "z"};
    for (const auto& [label, docs] : groups) {
        Partition part;
        for (const auto& d : corpus.documents()) {
            if (group_label(d, spec.group_by) == label) part.p0.insert(d.id);
            else part.p1.insert(d.id);
        }
        if (part.p1.empty()) continue; // single-group corpus
        SpecificityReport report = characteristic_vocabulary(
            corpus, part, spec.unit, spec.threshold, spec.top_k);
        auto emit = [&](const std::vector<TermScore>& scores, const char* dir) {
            for (std::size_t i = 0; i < scores.size(); ++i) {
                const auto& s = scores[i];
                t.add_row({label, dir, std::to_string(i + 1), s.term,
                           std::to_string(s.tf0), std::to_string(s.tf1),
                           format_real(s.p), format_real(s.expected0),
                           format_real(s.z)});
            }
        };
        emit(report.overused, "overused");
        emit(report.underused, "underused");
    }
    return t;
}

namespace {

std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i) {
        s[i] = digits[v & 0xF];
        v >>= 4;
    }
    return s;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw LoadError("cannot write " + path.string());
    out << content;
}

bool section_enabled(const ReportSpec& spec, const std::string& name) {
    return spec.sections.empty() || spec.sections.count(name) > 0;
}

} // namespace

ReportBundle run_report(const Corpus& corpus, const ReportSpec& spec,
                        const std::string& out_dir) {
    spec.validate(corpus);
    fs::create_directories(out_dir);
    const fs::path dir(out_dir);

    ReportBundle bundle;
    std::vector<std::pair<std::string, std::string>> outputs; // name -> content

    auto emit_table = [&](const std::string& name, const Table& table) {
        outputs.emplace_back(name + ".tsv", table.to_tsv());
        outputs.emplace_back(name + ".json", table.to_json());
    };
    auto run_section = [&](const std::string& name, auto&& fn) {
        if (!section_enabled(spec, name)) return;
        try {
            fn();
        } catch (const ValidationError& e) {
            bundle.skipped.push_back(name + ": " + e.what());
        }
    };

    run_section("summary", [&] {
        emit_table("summary", summary_table(corpus, spec.group_by));
    });
    run_section("topk", [&] { emit_table("topk", topk_table(corpus, spec)); });
    run_section("stats", [&] { emit_table("stats", stats_table(corpus, spec)); });
    run_section("pos", [&] { emit_table("pos", pos_table(corpus, spec)); });
    run_section("categories", [&] {
        emit_table("categories", categories_table(corpus, spec));
    });
    run_section("specificity", [&] {
        emit_table("specificity", specificity_table(corpus, spec));
    });
    run_section("distance", [&] {
        DistanceMatrix m = distance_matrix(corpus, spec.group_by, FreqUnit::Surface,
                                           spec.max_ratio, spec.enforce_ratio);
        outputs.emplace_back("distance.tsv", matrix_to_tsv(m));
        nlohmann::json j;
        j["labels"] = m.labels;
        j["d"] = m.d;
        outputs.emplace_back("distance.json", j.dump(2) + "\n");
        if (m.size() >= 3) {
            UnrootedTree tree = neighbor_joining(m);
            outputs.emplace_back("tree.nwk", export_newick(tree) + "\n");
            outputs.emplace_back("tree.svg", layout_to_svg(layout_tree(tree)));
            outputs.emplace_back("tree.dot", tree_to_dot(tree));
        }
    });

    nlohmann::json manifest;
    manifest["tool"] = "stylo";
    manifest["parameters"] = {
        {"group_by", spec.group_by},
        {"baseline", spec.baseline ? nlohmann::json(*spec.baseline) : nlohmann::json()},
        {"alpha", spec.alpha},
        {"window", spec.window},
        {"threshold", spec.threshold},
        {"top_k", spec.top_k},
        {"max_ratio", spec.max_ratio},
        {"unit", to_string(spec.unit)},
        {"word_denominator", spec.word_denominator},
    };
    manifest["documents"] = corpus.size();
    manifest["files"] = nlohmann::json::array();
    for (const auto& [name, content] : outputs) {
        write_file(dir / name, content);
        bundle.files.push_back(name);
        manifest["files"].push_back({{"name", name},
                                     {"bytes", content.size()},
                                     {"fnv1a64", hex64(fnv1a64(content))}});
    }
    manifest["skipped"] = bundle.skipped;
    write_file(dir / "manifest.json", manifest.dump(2) + "\n");
    return bundle;
}

} // namespace stylo
