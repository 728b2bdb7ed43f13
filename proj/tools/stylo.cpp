#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "stylo/categories.hpp"
#include "stylo/corpus.hpp"
#include "stylo/distance.hpp"
#include "stylo/errors.hpp"
#include "stylo/lexstats.hpp"
#include "stylo/report.hpp"
#include "stylo/specificity.hpp"
#include "stylo/stattests.hpp"
#include "stylo/table.hpp"
#include "stylo/tokenizer.hpp"
#include "stylo/tree.hpp"

namespace fs = std::filesystem;
using namespace stylo;

namespace {

struct CommonOpts {
    std::string manifest;
    std::string group_by = "group";
    std::string out;
    std::string format = "tsv";
    std::string tagmap_file;
    std::string abbrev_file;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool needs_manifest = true) {
    auto* m = cmd->add_option("--manifest", o.manifest, "corpus manifest (TSV or JSON)");
    if (needs_manifest) m->required();
    cmd->add_option("--group-by", o.group_by,
                    "comma-separated metadata keys (group,subgroup,origin,year,id)");
    cmd->add_option("--out", o.out, "output file (default: stdout)");
    cmd->add_option("--format", o.format, "tsv or json")
        ->check(CLI::IsMember({"tsv", "json"}));
    cmd->add_option("--tagmap", o.tagmap_file, "POS tag mapping file (raw TAB toolkit)");
    cmd->add_option("--abbrev", o.abbrev_file,
                    "abbreviation list for sentence splitting, one per line");
}

std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw LoadError("cannot open file: " + path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) lines.push_back(line);
    }
    return lines;
}

Corpus load(const CommonOpts& o) {
    TagMap tags = o.tagmap_file.empty() ? TagMap::builtin()
                                        : TagMap::from_file(o.tagmap_file);
    auto abbrevs = o.abbrev_file.empty() ? default_abbreviations()
                                         : read_lines(o.abbrev_file);
    return load_manifest(o.manifest, tags, abbrevs);
}

// Fully renders before touching the output file, so failures leave nothing
// partial behind.
void emit(const CommonOpts& o, const Table& table) {
    const std::string text = o.format == "json" ? table.to_json() : table.to_tsv();
    if (o.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(o.out, std::ios::binary);
    if (!out) throw LoadError("cannot write " + o.out);
    out << text;
}

void emit_text(const std::string& out, const std::string& text) {
    if (out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) throw LoadError("cannot write " + out);
    f << text;
}

std::vector<Wordlist> load_lists(const std::string& explicit_path) {
    if (!explicit_path.empty()) return load_wordlists(explicit_path);
    if (const char* dir = std::getenv("STYLO_WORDLISTS")) {
        fs::path p = fs::path(dir) / "default.json";
        if (fs::exists(p)) return load_wordlists(p.string());
    }
    return default_wordlists();
}

Partition make_partition(const Corpus& corpus, const std::string& p0_selector) {
    Partition part;
    for (const Document* d : select(corpus, p0_selector)) part.p0.insert(d->id);
    for (const auto& d : corpus.documents())
        if (!part.p0.count(d.id)) part.p1.insert(d.id);
    part.validate(corpus);
    return part;
}

std::vector<double> parse_sample(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(std::stod(cell));
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"stylo: corpus stylometry toolkit"};
    app.require_subcommand(1);

    // summary
    CommonOpts sum_o;
    auto* cmd_summary = app.add_subcommand("summary", "per-group token/type counts");
    add_common(cmd_summary, sum_o);

    // topk
    CommonOpts topk_o;
    std::string topk_unit = "lemma";
    std::size_t topk_k = 10;
    std::string topk_baseline;
    double topk_alpha = 0.01;
    auto* cmd_topk = app.add_subcommand("topk", "most frequent surface/lemma/pos keys");
    add_common(cmd_topk, topk_o);
    cmd_topk->add_option("--unit", topk_unit, "surface|lemma|pos");
    cmd_topk->add_option("-k,--k", topk_k, "rows per group");
    cmd_topk->add_option("--baseline", topk_baseline, "group to test others against");
    cmd_topk->add_option("--alpha", topk_alpha, "significance level");

    // stats
    CommonOpts stats_o;
    std::size_t stats_window = 2000;
    std::string stats_baseline;
    double stats_alpha = 0.01;
    auto* cmd_stats = app.add_subcommand("stats", "lexical complexity statistics");
    add_common(cmd_stats, stats_o);
    cmd_stats->add_option("--window", stats_window, "TTR window size");
    cmd_stats->add_option("--baseline", stats_baseline, "group to test others against");
    cmd_stats->add_option("--alpha", stats_alpha, "significance level");

    // pos
    CommonOpts pos_o;
    std::string pos_baseline;
    double pos_alpha = 0.01;
    auto* cmd_pos = app.add_subcommand("pos", "part-of-speech distribution");
    add_common(cmd_pos, pos_o);
    cmd_pos->add_option("--baseline", pos_baseline, "group to test others against");
    cmd_pos->add_option("--alpha", pos_alpha, "significance level");

    // categories
    CommonOpts cat_o;
    std::string cat_lists, cat_baseline;
    double cat_alpha = 0.01;
    bool cat_word_denominator = false;
    auto* cmd_cat = app.add_subcommand("categories", "wordlist category frequencies");
    add_common(cmd_cat, cat_o);
    cmd_cat->add_option("--wordlists", cat_lists, "wordlist file (JSON or INI)");
    cmd_cat->add_option("--baseline", cat_baseline, "group to test others against");
    cmd_cat->add_option("--alpha", cat_alpha, "significance level");
    cmd_cat->add_flag("--word-denominator", cat_word_denominator,
                      "divide by word tokens instead of all tokens");

    // specificity
    CommonOpts spec_o;
    std::string spec_p0, spec_unit = "lemma";
    double spec_threshold = 3.0;
    std::size_t spec_k = 10;
    auto* cmd_spec = app.add_subcommand("specificity", "characteristic vocabulary Z-scores");
    add_common(cmd_spec, spec_o);
    cmd_spec->add_option("--p0", spec_p0, "P0 selector, key=value[,key=value]")->required();
    cmd_spec->add_option("--unit", spec_unit, "lemma|surface");
    cmd_spec->add_option("--threshold", spec_threshold, "|z| threshold");
    cmd_spec->add_option("-k,--k", spec_k, "terms per direction");

    // typical
    CommonOpts typ_o;
    std::string typ_p0, typ_unit = "lemma";
    double typ_threshold = 3.0;
    std::size_t typ_k = 10;
    auto* cmd_typ = app.add_subcommand("typical", "sentences rich in overused terms");
    add_common(cmd_typ, typ_o);
    cmd_typ->add_option("--p0", typ_p0, "P0 selector, key=value[,key=value]")->required();
    cmd_typ->add_option("--unit", typ_unit, "lemma|surface");
    cmd_typ->add_option("--threshold", typ_threshold, "|z| threshold");
    cmd_typ->add_option("-k,--k", typ_k, "sentences to keep");

    // test
    auto* cmd_test = app.add_subcommand("test", "significance tests");
    cmd_test->require_subcommand(1);
    std::size_t tp_x1 = 0, tp_n1 = 0, tp_x2 = 0, tp_n2 = 0;
    double tp_alpha = 0.01;
    auto* cmd_prop = cmd_test->add_subcommand("prop", "two-proportion z-test");
    cmd_prop->add_option("--x1", tp_x1)->required();
    cmd_prop->add_option("--n1", tp_n1)->required();
    cmd_prop->add_option("--x2", tp_x2)->required();
    cmd_prop->add_option("--n2", tp_n2)->required();
    cmd_prop->add_option("--alpha", tp_alpha);
    std::string tt_s1, tt_s2;
    double tt_alpha = 0.01;
    auto* cmd_t = cmd_test->add_subcommand("t", "Welch's t-test");
    cmd_t->add_option("--sample1", tt_s1, "comma-separated values")->required();
    cmd_t->add_option("--sample2", tt_s2, "comma-separated values")->required();
    cmd_t->add_option("--alpha", tt_alpha);

    // distance
    CommonOpts dist_o;
    std::string dist_unit = "surface";
    double dist_max_ratio = 8.0;
    bool dist_permissive = false;
    auto* cmd_dist = app.add_subcommand("distance", "pairwise intertextual distances");
    add_common(cmd_dist, dist_o);
    cmd_dist->add_option("--unit", dist_unit, "surface|lemma");
    cmd_dist->add_option("--max-ratio", dist_max_ratio, "length-ratio limit");
    cmd_dist->add_flag("--permissive", dist_permissive,
                       "warn instead of failing on the ratio limit");

    // tree
    std::string tree_matrix, tree_newick_out, tree_svg_out, tree_dot_out;
    auto* cmd_tree = app.add_subcommand("tree", "neighbor-joining tree from a matrix");
    cmd_tree->add_option("--matrix", tree_matrix, "distance matrix TSV")->required();
    cmd_tree->add_option("--newick", tree_newick_out, "Newick output file");
    cmd_tree->add_option("--svg", tree_svg_out, "SVG drawing output file");
    cmd_tree->add_option("--dot", tree_dot_out, "Graphviz DOT output file");

    // report
    CommonOpts rep_o;
    std::string rep_out_dir, rep_baseline, rep_sections, rep_lists;
    std::string rep_unit = "lemma";
    double rep_alpha = 0.01, rep_threshold = 3.0, rep_max_ratio = 8.0;
    std::size_t rep_window = 2000, rep_k = 10;
    bool rep_strict = false, rep_word_denominator = false, rep_permissive = false;
    auto* cmd_rep = app.add_subcommand("report", "full multi-section analysis bundle");
    add_common(cmd_rep, rep_o);
    cmd_rep->add_option("--out-dir", rep_out_dir, "bundle directory")->required();
    cmd_rep->add_option("--baseline", rep_baseline, "group to test others against");
    cmd_rep->add_option("--sections", rep_sections,
                        "comma-separated subset of summary,topk,stats,pos,"
                        "categories,specificity,distance");
    cmd_rep->add_option("--wordlists", rep_lists, "wordlist file (JSON or INI)");
    cmd_rep->add_option("--unit", rep_unit, "surface|lemma");
    cmd_rep->add_option("--alpha", rep_alpha, "significance level");
    cmd_rep->add_option("--threshold", rep_threshold, "specificity |z| threshold");
    cmd_rep->add_option("--window", rep_window, "TTR window size");
    cmd_rep->add_option("-k,--k", rep_k, "rows per group / terms per direction");
    cmd_rep->add_option("--max-ratio", rep_max_ratio, "distance length-ratio limit");
    cmd_rep->add_flag("--permissive", rep_permissive,
                      "warn instead of failing on the ratio limit");
    cmd_rep->add_flag("--strict", rep_strict, "nonzero exit when a section is skipped");
    cmd_rep->add_flag("--word-denominator", rep_word_denominator,
                      "word-token denominator for categories");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*cmd_summary) {
            emit(sum_o, summary_table(load(sum_o), sum_o.group_by));
        } else if (*cmd_topk) {
            ReportSpec spec;
            spec.group_by = topk_o.group_by;
            spec.unit = freq_unit_from_string(topk_unit);
            spec.top_k = topk_k;
            spec.alpha = topk_alpha;
            if (!topk_baseline.empty()) spec.baseline = topk_baseline;
            Corpus corpus = load(topk_o);
            spec.validate(corpus);
            emit(topk_o, topk_table(corpus, spec));
        } else if (*cmd_stats) {
            ReportSpec spec;
            spec.group_by = stats_o.group_by;
            spec.window = stats_window;
            spec.alpha = stats_alpha;
            if (!stats_baseline.empty()) spec.baseline = stats_baseline;
            Corpus corpus = load(stats_o);
            spec.validate(corpus);
            emit(stats_o, stats_table(corpus, spec));
        } else if (*cmd_pos) {
            ReportSpec spec;
            spec.group_by = pos_o.group_by;
            spec.alpha = pos_alpha;
            if (!pos_baseline.empty()) spec.baseline = pos_baseline;
            Corpus corpus = load(pos_o);
            spec.validate(corpus);
            emit(pos_o, pos_table(corpus, spec));
        } else if (*cmd_cat) {
            ReportSpec spec;
            spec.group_by = cat_o.group_by;
            spec.alpha = cat_alpha;
            spec.word_denominator = cat_word_denominator;
            spec.wordlists = load_lists(cat_lists);
            if (!cat_baseline.empty()) spec.baseline = cat_baseline;
            Corpus corpus = load(cat_o);
            spec.validate(corpus);
            emit(cat_o, categories_table(corpus, spec));
        } else if (*cmd_spec) {
            Corpus corpus = load(spec_o);
            Partition part = make_partition(corpus, spec_p0);
            SpecificityReport report = characteristic_vocabulary(
                corpus, part, freq_unit_from_string(spec_unit), spec_threshold, spec_k);
            Table t;
            t.columns = {"term", "tf0", "tf1", "p", "expected", "z", "direction"};
            auto emit_rows = [&](const std::vector<TermScore>& scores, const char* dir) {
                for (const auto& s : scores)
                    t.add_row({s.term, std::to_string(s.tf0), std::to_string(s.tf1),
                               format_real(s.p), format_real(s.expected0),
                               format_real(s.z), dir});
            };
            emit_rows(report.overused, "overused");
            emit_rows(report.underused, "underused");
            emit(spec_o, t);
        } else if (*cmd_typ) {
            Corpus corpus = load(typ_o);
            Partition part = make_partition(corpus, typ_p0);
            FreqUnit unit = freq_unit_from_string(typ_unit);
            SpecificityReport report = characteristic_vocabulary(
                corpus, part, unit, typ_threshold, 1000000);
            auto sentences = typical_sentences(corpus, part, report, unit, typ_k);
            std::ostringstream out;
            if (sentences.empty())
                out << "# no overused terms above threshold "
                    << format_real(typ_threshold) << "\n";
            for (const auto& s : sentences)
                out << s.doc_id << "#" << s.sentence_index << "\t"
                    << s.overused_count << "\t" << s.text << "\n";
            emit_text(typ_o.out, out.str());
        } else if (*cmd_prop) {
            TestResult r = two_proportion_test(tp_x1, tp_n1, tp_x2, tp_n2, tp_alpha);
            Table t;
            t.columns = {"test", "statistic", "p_value", "alpha", "significant"};
            t.add_row({"two_proportion", format_real(r.statistic),
                       format_real(r.p_value), format_real(r.alpha),
                       r.significant ? "*" : ""});
            std::cout << t.to_tsv();
        } else if (*cmd_t) {
            TestResult r = welch_t_test(parse_sample(tt_s1), parse_sample(tt_s2), tt_alpha);
            Table t;
            t.columns = {"test", "statistic", "df", "p_value", "alpha", "significant"};
            t.add_row({"welch_t", format_real(r.statistic), format_real(r.df),
                       format_real(r.p_value), format_real(r.alpha),
                       r.significant ? "*" : ""});
            std::cout << t.to_tsv();
        } else if (*cmd_dist) {
            Corpus corpus = load(dist_o);
            DistanceMatrix m =
                distance_matrix(corpus, dist_o.group_by,
                                freq_unit_from_string(dist_unit), dist_max_ratio,
                                !dist_permissive);
            if (dist_o.format == "json") {
                nlohmann::json j;
                j["labels"] = m.labels;
                j["d"] = m.d;
                emit_text(dist_o.out, j.dump(2) + "\n");
            } else {
                emit_text(dist_o.out, matrix_to_tsv(m));
            }
        } else if (*cmd_tree) {
            DistanceMatrix m = read_matrix_tsv(tree_matrix);
            UnrootedTree tree = neighbor_joining(m);
            const std::string newick = export_newick(tree) + "\n";
            if (tree_newick_out.empty() && tree_svg_out.empty() && tree_dot_out.empty())
                std::cout << newick;
            if (!tree_newick_out.empty()) emit_text(tree_newick_out, newick);
            if (!tree_svg_out.empty())
                emit_text(tree_svg_out, layout_to_svg(layout_tree(tree)));
            if (!tree_dot_out.empty()) emit_text(tree_dot_out, tree_to_dot(tree));
        } else if (*cmd_rep) {
            ReportSpec spec;
            spec.group_by = rep_o.group_by;
            spec.alpha = rep_alpha;
            spec.window = rep_window;
            spec.threshold = rep_threshold;
            spec.top_k = rep_k;
            spec.max_ratio = rep_max_ratio;
            spec.enforce_ratio = !rep_permissive;
            spec.unit = freq_unit_from_string(rep_unit);
            spec.word_denominator = rep_word_denominator;
            spec.strict = rep_strict;
            spec.wordlists = load_lists(rep_lists);
            if (!rep_baseline.empty()) spec.baseline = rep_baseline;
            if (!rep_sections.empty()) {
                std::stringstream ss(rep_sections);
                std::string s;
                while (std::getline(ss, s, ',')) spec.sections.insert(s);
            }
            Corpus corpus = load(rep_o);
            ReportBundle bundle = run_report(corpus, spec, rep_out_dir);
            for (const auto& s : bundle.skipped)
                std::cerr << "warning: section skipped: " << s << "\n";
            if (rep_strict && !bundle.skipped.empty()) return 3;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
