#include "stylo/distance.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "stylo/errors.hpp"
#include "stylo/tokenizer.hpp"

namespace stylo {

void DistanceMatrix::validate() const {
    const std::size_t n = labels.size();
    if (d.size() != n)
        throw ValidationError("distance matrix: row count does not match labels");
    for (std::size_t i = 0; i < n; ++i) {
        if (d[i].size() != n)
            throw ValidationError("distance matrix: not square");
        if (d[i][i] != 0.0)
            throw ValidationError("distance matrix: nonzero diagonal at " + labels[i]);
        for (std::size_t j = 0; j < n; ++j) {
            if (d[i][j] < 0.0)
                throw ValidationError("distance matrix: negative entry");
            if (std::fabs(d[i][j] - d[j][i]) > 1e-12)
                throw ValidationError("distance matrix: not symmetric at (" +
                                      labels[i] + ", " + labels[j] + ")");
        }
    }
}

double labbe_distance(const std::vector<std::string>& a,
                      const std::vector<std::string>& b, double max_ratio,
                      bool enforce_ratio) {
    if (a.empty() || b.empty())
        throw ValidationError("labbe_distance: empty token stream");
    const auto* shorter = &a;
    const auto* longer = &b;
    if (shorter->size() > longer->size()) std::swap(shorter, longer);
    const double na = static_cast<double>(shorter->size());
    const double nb = static_cast<double>(longer->size());
    if (enforce_ratio && nb / na > max_ratio)
        throw ValidationError("labbe_distance: length ratio " +
                              std::to_string(nb / na) + " exceeds limit " +
                              std::to_string(max_ratio));

    std::map<std::string, std::pair<std::size_t, std::size_t>> tf;
    for (const auto& t : *shorter) ++tf[t].first;
    for (const auto& t : *longer) ++tf[t].second;

    const double scale = na / nb;
    double sum = 0.0;
    for (const auto& [_, c] : tf)
        sum += std::fabs(static_cast<double>(c.first) -
                         static_cast<double>(c.second) * scale);
    return sum / (2.0 * na);
}

std::vector<std::string> term_stream(const DocSet& docs, FreqUnit unit) {
    if (unit == FreqUnit::Pos)
        throw ValidationError("term_stream: unit must be surface or lemma");
    std::vector<std::string> out;
    for (const Document* d : docs)
        for (const auto& t : d->tokens) {
            if (unit == FreqUnit::Lemma) {
                std::string lemma = effective_lemma(t);
                if (lemma.empty())
                    throw ValidationError("missing lemma annotation on token '" +
                                          t.surface + "'");
                out.push_back(std::move(lemma));
            } else {
                out.push_back(to_lower(t.surface));
            }
        }
    return out;
}

DistanceMatrix distance_matrix(const Corpus& corpus, const std::string& group_by,
                               FreqUnit unit, double max_ratio,
                               bool enforce_ratio) {
    auto groups = group_documents(corpus, group_by);
    if (groups.size() < 2)
        throw ValidationError("distance_matrix: need at least 2 groups, got " +
                              std::to_string(groups.size()));
    DistanceMatrix m;
    std::vector<std::vector<std::string>> streams;
    for (const auto& [label, docs] : groups) {
        m.labels.push_back(label);
        streams.push_back(term_stream(docs, unit));
    }
    const std::size_t n = m.labels.size();
    m.d.assign(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            double dist;
            try {
                dist = labbe_distance(streams[i], streams[j], max_ratio, enforce_ratio);
            } catch (const ValidationError& e) {
                throw ValidationError("distance_matrix: pair (" + m.labels[i] +
                                      ", " + m.labels[j] + "): " + e.what());
            }
            m.d[i][j] = m.d[j][i] = dist;
        }
    return m;
}

std::string matrix_to_tsv(const DistanceMatrix& m) {
    std::ostringstream out;
    out << "label";
    for (const auto& l : m.labels) out << '\t' << l;
    out << '\n';
    out.setf(std::ios::fixed);
    out.precision(6);
    for (std::size_t i = 0; i < m.size(); ++i) {
        out << m.labels[i];
        for (std::size_t j = 0; j < m.size(); ++j) out << '\t' << m.d[i][j];
        out << '\n';
    }
    return out.str();
}

DistanceMatrix read_matrix_tsv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw LoadError("cannot open matrix file: " + path);
    DistanceMatrix m;
    std::string line;
    if (!std::getline(in, line)) throw LoadError("empty matrix file: " + path);
    {
        std::istringstream header(line);
        std::string cell;
        bool first = true;
        while (std::getline(header, cell, '\t')) {
            if (first) { first = false; continue; } // corner cell
            m.labels.push_back(cell);
        }
    }
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string cell;
        std::getline(row, cell, '\t'); // row label
        std::vector<double> values;
        while (std::getline(row, cell, '\t')) values.push_back(std::stod(cell));
        m.d.push_back(std::move(values));
    }
    m.validate();
    return m;
}

} // namespace stylo
