#include "stylo/specificity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "stylo/errors.hpp"
#include "stylo/tokenizer.hpp"

namespace stylo {

double term_probability(std::size_t tf0, std::size_t tf1, std::size_t n) {
    if (n == 0) throw ValidationError("term_probability: corpus size is zero");
    if (tf0 + tf1 > n)
        throw ValidationError("term_probability: tf0+tf1 exceeds corpus size");
    return static_cast<double>(tf0 + tf1) / static_cast<double>(n);
}

double z_score(std::size_t tf0, std::size_t n0, std::size_t tf1, std::size_t n1) {
    if (n0 == 0 || n1 == 0)
        throw ValidationError("z_score: both parts must be non-empty");
    const double p = term_probability(tf0, tf1, n0 + n1);
    if (p <= 0.0 || p >= 1.0) return std::numeric_limits<double>::quiet_NaN();
    const double expected = static_cast<double>(n0) * p;
    const double variance = expected * (1.0 - p);
    return (static_cast<double>(tf0) - expected) / std::sqrt(variance);
}

namespace {

std::string score_key(const Token& t, FreqUnit unit) {
    if (unit == FreqUnit::Lemma) {
        std::string lemma = effective_lemma(t);
        if (lemma.empty())
            throw ValidationError("missing lemma annotation on token '" + t.surface + "'");
        return lemma;
    }
    return to_lower(t.surface);
}

} // namespace

SpecificityReport characteristic_vocabulary(const Corpus& corpus,
                                            const Partition& partition,
                                            FreqUnit unit, double threshold,
                                            std::size_t top_k) {
    partition.validate(corpus);
    if (unit == FreqUnit::Pos)
        throw ValidationError("characteristic_vocabulary: unit must be lemma or surface");

    std::map<std::string, std::pair<std::size_t, std::size_t>> counts;
    std::size_t n0 = 0, n1 = 0;
    for (const auto& doc : corpus.documents()) {
        const bool in0 = partition.p0.count(doc.id) > 0;
        const bool in1 = partition.p1.count(doc.id) > 0;
        if (!in0 && !in1) continue;
        for (const auto& t : doc.tokens) {
            auto& c = counts[score_key(t, unit)];
            if (in0) { ++c.first; ++n0; }
            else { ++c.second; ++n1; }
        }
    }
    if (counts.empty())
        throw ValidationError("characteristic_vocabulary: empty vocabulary");

    SpecificityReport report;
    report.partition = partition;
    report.threshold = threshold;
    report.n0 = n0;
    report.n1 = n1;
    const std::size_t n = n0 + n1;
    for (const auto& [term, c] : counts) {
        const double z = z_score(c.first, n0, c.second, n1);
        if (std::isnan(z)) continue; // p in {0,1}: score undefined
        if (z > threshold || z < -threshold) {
            TermScore s;
            s.term = term;
            s.tf0 = c.first;
            s.tf1 = c.second;
            s.p = term_probability(c.first, c.second, n);
            s.expected0 = static_cast<double>(n0) * s.p;
            s.z = z;
            if (z > threshold) report.overused.push_back(std::move(s));
            else report.underused.push_back(std::move(s));
        }
    }
    std::stable_sort(report.overused.begin(), report.overused.end(),
                     [](const auto& a, const auto& b) {
                         if (a.z != b.z) return a.z > b.z;
                         return a.term < b.term;
                     });
    std::stable_sort(report.underused.begin(), report.underused.end(),
                     [](const auto& a, const auto& b) {
                         if (a.z != b.z) return a.z < b.z;
                         return a.term < b.term;
                     });
    if (report.overused.size() > top_k) report.overused.resize(top_k);
    if (report.underused.size() > top_k) report.underused.resize(top_k);
    return report;
}

std::vector<TypicalSentence> typical_sentences(const Corpus& corpus,
                                               const Partition& partition,
                                               const SpecificityReport& report,
                                               FreqUnit unit, std::size_t top_k) {
    partition.validate(corpus);
    std::vector<TypicalSentence> out;
    if (report.overused.empty()) return out;

    std::set<std::string> overused;
    for (const auto& s : report.overused) overused.insert(s.term);

    for (const auto& doc : corpus.documents()) {
        if (!partition.p0.count(doc.id)) continue;
        for (std::size_t si = 0; si < doc.sentences.size(); ++si) {
            const auto& sent = doc.sentences[si];
            TypicalSentence ts;
            ts.doc_id = doc.id;
            ts.sentence_index = si;
            for (std::size_t i = sent.begin; i < sent.end; ++i) {
                const Token& t = doc.tokens[i];
                const bool hit = overused.count(score_key(t, unit)) > 0;
                if (hit) ++ts.overused_count;
                if (!ts.text.empty()) ts.text += ' ';
                ts.text += hit ? "[" + t.surface + "]" : t.surface;
            }
            if (sent.size() > 0)
                ts.density = static_cast<double>(ts.overused_count) /
                             static_cast<double>(sent.size());
            out.push_back(std::move(ts));
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.overused_count != b.overused_count)
            return a.overused_count > b.overused_count;
        return a.density > b.density;
        // remaining ties keep document order (stable sort)
    });
    if (out.size() > top_k) out.resize(top_k);
    return out;
}

} // namespace stylo
