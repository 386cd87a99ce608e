#include "okbc/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "okbc/rng.hpp"

namespace okbc {

namespace {

WarnFn g_warn = [](const std::string& msg) { std::cerr << "warning: " << msg << "\n"; };

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        std::size_t pos = line.find('\t', start);
        if (pos == std::string::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

int parse_int(const std::string& s, const std::string& where) {
    int v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        throw ParseError(where + ": expected integer, got '" + s + "'");
    return v;
}

double parse_double(const std::string& s, const std::string& where) {
    try {
        std::size_t used = 0;
        double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError(where + ": expected number, got '" + s + "'");
    }
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    return in;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    return out;
}

} // namespace

void set_warn_handler(WarnFn fn) { g_warn = std::move(fn); }
void warn(const std::string& msg) { if (g_warn) g_warn(msg); }

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Dataset load_dataset(const std::string& triples_path, const std::string& sources_path) {
    Dataset ds;

    {
        auto in = open_input(sources_path);
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty()) continue;
            std::size_t tab = line.find('\t');
            if (tab == std::string::npos)
                throw ParseError(sources_path + " line " + std::to_string(lineno) +
                                 ": expected 'source_id<TAB>text'");
            SourceText st;
            st.id = parse_int(line.substr(0, tab),
                              sources_path + " line " + std::to_string(lineno));
            st.text = line.substr(tab + 1);
            if (st.text.empty())
                throw ParseError(sources_path + " line " + std::to_string(lineno) +
                                 ": empty source text");
            ds.source_index.emplace(st.id, ds.sources.size());
            ds.sources.push_back(std::move(st));
        }
    }

    auto in = open_input(triples_path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto f = split_tabs(line);
        const std::string where = triples_path + " line " + std::to_string(lineno);
        if (f.size() < 5 || f.size() > 7)
            throw ParseError(where + ": expected 5-7 tab-separated fields, got " +
                             std::to_string(f.size()));
        Triple t;
        t.id = parse_int(f[0], where);
        t.subject = ds.phrases.intern(PhraseKind::NP, f[1]);
        t.relation = ds.phrases.intern(PhraseKind::RP, f[2]);
        t.object = ds.phrases.intern(PhraseKind::NP, f[3]);
        t.source_id = parse_int(f[4], where);
        if (ds.source_index.find(t.source_id) == ds.source_index.end())
            throw IntegrityError(where + ": triple references unknown source " +
                                 std::to_string(t.source_id));
        if (f.size() >= 6 && !f[5].empty()) t.gold_subject = f[5];
        if (f.size() >= 7 && !f[6].empty()) t.gold_object = f[6];
        ds.triples.push_back(std::move(t));
    }
    return ds;
}

std::span<const double> WordVectors::vec(const std::string& token) const {
    auto it = index.find(token);
    if (it == index.end()) throw LookupError("unknown token '" + token + "'");
    return data.row_span(it->second);
}

WordVectors load_word_vectors(const std::string& path) {
    auto in = open_input(path);
    std::string line;
    if (!std::getline(in, line)) throw FormatError(path + ": missing header");
    std::istringstream header(line);
    long long n = 0, p = 0;
    if (!(header >> n >> p) || n < 0 || p <= 0)
        throw FormatError(path + ": bad header '" + line + "'");

    WordVectors wv;
    wv.dim = static_cast<std::size_t>(p);
    wv.data = Matrix(0, wv.dim);
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string token;
        row >> token;
        Vec v(wv.dim);
        for (std::size_t j = 0; j < wv.dim; ++j) {
            if (!(row >> v[j]))
                throw FormatError(path + " line " + std::to_string(lineno) +
                                  ": expected " + std::to_string(wv.dim) + " values");
        }
        double extra;
        if (row >> extra)
            throw FormatError(path + " line " + std::to_string(lineno) +
                              ": more than " + std::to_string(wv.dim) + " values");
        auto it = wv.index.find(token);
        if (it != wv.index.end()) {
            warn(path + ": duplicate token '" + token + "', keeping last occurrence");
            wv.data.set_row(it->second, v);
        } else {
            wv.index.emplace(token, wv.tokens.size());
            wv.tokens.push_back(token);
            wv.data.rows += 1;
            wv.data.data.insert(wv.data.data.end(), v.begin(), v.end());
        }
    }
    if (static_cast<long long>(wv.tokens.size()) != n)
        warn(path + ": header says " + std::to_string(n) + " rows, file has " +
             std::to_string(wv.tokens.size()));
    return wv;
}

Vec embed_phrase_avg(const Phrase& phrase, const WordVectors& wv,
                     const Vec& fallback, bool* used_fallback) {
    Vec sum(wv.dim, 0.0);
    std::size_t found = 0;
    for (const auto& tok : phrase.tokens) {
        auto it = wv.index.find(tok);
        if (it == wv.index.end()) continue;
        auto row = wv.data.row_span(it->second);
        for (std::size_t j = 0; j < wv.dim; ++j) sum[j] += row[j];
        ++found;
    }
    if (found == 0) {
        if (used_fallback) *used_fallback = true;
        return fallback;
    }
    if (used_fallback) *used_fallback = false;
    for (double& x : sum) x /= static_cast<double>(found);
    return sum;
}

Vec random_unit_vec(std::size_t dim, std::uint64_t seed, Norm norm) {
    Rng rng(seed);
    Vec v(dim);
    for (double& x : v) x = rng.gaussian();
    if (l2_norm(v) == 0.0) v[0] = 1.0;
    normalize_in_place(v, norm);
    return v;
}

void save_embeddings(const EmbeddingTable& table, const std::string& path) {
    auto out = open_output(path);
    out << table.size() << ' ' << table.dim() << '\n';
    for (PhraseId id : table.ids()) {
        out << id;
        for (double x : table.vec(id)) out << ' ' << format_double(x);
        out << '\n';
    }
}

EmbeddingTable load_embeddings(const std::string& path, View view) {
    auto in = open_input(path);
    std::string line;
    if (!std::getline(in, line)) throw FormatError(path + ": missing header");
    std::istringstream header(line);
    long long n = 0, p = 0;
    if (!(header >> n >> p) || n < 0 || p <= 0)
        throw FormatError(path + ": bad header '" + line + "'");
    EmbeddingTable table(view, static_cast<std::size_t>(p));
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream row(line);
        PhraseId id;
        if (!(row >> id))
            throw FormatError(path + " line " + std::to_string(lineno) + ": expected id");
        Vec v(table.dim());
        for (std::size_t j = 0; j < table.dim(); ++j)
            if (!(row >> v[j]))
                throw FormatError(path + " line " + std::to_string(lineno) +
                                  ": expected " + std::to_string(table.dim()) + " values");
        table.add(id, v);
    }
    return table;
}

void save_clusters(const Clustering& c,
                   const std::function<std::string(PhraseId)>& surface_of,
                   const std::string& path) {
    auto out = open_output(path);
    auto groups = c.members();
    for (int j = 0; j < c.k; ++j) {
        out << j;
        for (std::size_t pos : groups[j]) out << '\t' << surface_of(c.element_ids[pos]);
        out << '\n';
    }
}

std::vector<std::vector<std::string>> load_cluster_file(const std::string& path) {
    auto in = open_input(path);
    std::vector<std::vector<std::string>> clusters;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto f = split_tabs(line);
        if (f.size() < 2)
            throw ParseError(path + " line " + std::to_string(lineno) +
                             ": expected 'cluster_id<TAB>member...'");
        clusters.emplace_back(f.begin() + 1, f.end());
    }
    return clusters;
}

BenchmarkData load_benchmark_csv(const std::string& path) {
    auto in = open_input(path);
    std::string line;
    std::vector<std::vector<std::string>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::vector<std::string> fields;
        std::size_t start = 0;
        for (;;) {
            std::size_t pos = line.find(',', start);
            if (pos == std::string::npos) {
                fields.push_back(line.substr(start));
                break;
            }
            fields.push_back(line.substr(start, pos - start));
            start = pos + 1;
        }
        rows.push_back(std::move(fields));
    }
    if (rows.empty()) throw ParseError(path + ": empty dataset");

    std::size_t start_row = 0;
    {   // header detection: non-numeric first field
        const std::string& first = rows[0][0];
        double v;
        auto [p, ec] = std::from_chars(first.data(), first.data() + first.size(), v);
        if (ec != std::errc() || p != first.data() + first.size()) start_row = 1;
    }
    if (rows.size() <= start_row) throw ParseError(path + ": no data rows");

    std::size_t ncols = rows[start_row].size();
    if (ncols < 2) throw ParseError(path + ": need at least one feature and a label column");

    BenchmarkData bd;
    bd.features = Matrix(rows.size() - start_row, ncols - 1);
    for (std::size_t i = start_row; i < rows.size(); ++i) {
        if (rows[i].size() != ncols)
            throw ParseError(path + " row " + std::to_string(i + 1) + ": ragged row");
        for (std::size_t j = 0; j + 1 < ncols; ++j)
            bd.features.row(i - start_row)[j] =
                parse_double(rows[i][j], path + " row " + std::to_string(i + 1));
        bd.labels.push_back(rows[i][ncols - 1]);
    }
    std::vector<std::string> distinct = bd.labels;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    bd.gold_k = static_cast<int>(distinct.size());
    return bd;
}

void standardize_columns(Matrix& m) {
    if (m.rows == 0) return;
    for (std::size_t j = 0; j < m.cols; ++j) {
        double mean = 0.0;
        for (std::size_t i = 0; i < m.rows; ++i) mean += m.row(i)[j];
        mean /= static_cast<double>(m.rows);
        double var = 0.0;
        for (std::size_t i = 0; i < m.rows; ++i) {
            double d = m.row(i)[j] - mean;
            var += d * d;
        }
        var /= static_cast<double>(m.rows);
        double sd = std::sqrt(var);
        if (sd < 1e-12) continue;
        for (std::size_t i = 0; i < m.rows; ++i) m.row(i)[j] = (m.row(i)[j] - mean) / sd;
    }
}

} // namespace okbc
