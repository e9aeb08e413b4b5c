#pragma once

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "mlc/core/error.hpp"
#include "mlc/dataset.hpp"

namespace mlc {

// SVMlight-style multilabel text format.
//   line     := labels SP features
//   labels   := eps | int (',' int)*          (1-based label indices)
//   features := (int ':' float SP?)*          (1-based feature indices)
// '#' starts a comment; zero-length lines are ignored. A line of only
// whitespace is a row with no labels and no features. Optional sidecar header
// `#n=<n> d=<d> L=<L>` pins the dimensions.

namespace detail {

inline bool parse_int_token(std::string_view tok, int& out) {
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
    return ec == std::errc() && p == tok.data() + tok.size();
}

inline bool parse_double_token(std::string_view tok, double& out) {
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
    return ec == std::errc() && p == tok.data() + tok.size();
}

inline bool parse_svmlight_header(std::string_view line, int& n, int& d, int& l) {
    // expected shape: #n=<int> d=<int> L=<int>
    std::string text(line);
    int parsed_n, parsed_d, parsed_l;
    char trailing = '\0';
    int fields = std::sscanf(text.c_str(), "#n=%d d=%d L=%d %c", &parsed_n, &parsed_d, &parsed_l, &trailing);
    if (fields != 3) return false;
    n = parsed_n;
    d = parsed_d;
    l = parsed_l;
    return true;
}

} // namespace detail

inline Dataset load_svmlight_stream(std::istream& in, const std::string& source_name,
                                    const std::string& dataset_name) {
    std::vector<SparseRow> feature_rows;
    std::vector<std::vector<int>> label_rows;
    int max_feature = 0; // 1-based maxima as seen in the file
    int max_label = 0;
    bool have_header = false;
    int header_n = 0, header_d = 0, header_l = 0;

    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        const std::size_t first_nonspace = line.find_first_not_of(" \t");
        if (first_nonspace != std::string::npos && line[first_nonspace] == '#') {
            if (detail::parse_svmlight_header(line.substr(first_nonspace), header_n, header_d, header_l)) {
                if (have_header) throw ParseError(source_name, line_no, "duplicate header line");
                if (header_n < 0 || header_d < 0 || header_l < 0)
                    throw ParseError(source_name, line_no, "negative dimension in header");
                have_header = true;
            }
            continue;
        }

        std::string_view content{line};
        if (const std::size_t hash = content.find('#'); hash != std::string_view::npos)
            content = content.substr(0, hash);

        // leading whitespace means the label list is empty
        const bool empty_labels = content.empty() || content[0] == ' ' || content[0] == '\t';

        std::vector<std::string_view> tokens;
        for (std::size_t pos = 0; pos < content.size();) {
            const std::size_t start = content.find_first_not_of(" \t", pos);
            if (start == std::string_view::npos) break;
            std::size_t end = content.find_first_of(" \t", start);
            if (end == std::string_view::npos) end = content.size();
            tokens.push_back(content.substr(start, end - start));
            pos = end;
        }

        std::vector<int> labels;
        std::size_t first_feature_token = 0;
        if (!empty_labels) {
            if (tokens.empty()) throw ParseError(source_name, line_no, "unparsable line");
            first_feature_token = 1;
            std::string_view label_tok = tokens[0];
            if (label_tok.find(':') != std::string_view::npos)
                throw ParseError(source_name, line_no,
                                 "expected label list before features (empty label lists need a leading space)");
            std::size_t pos = 0;
            while (pos <= label_tok.size()) {
                std::size_t comma = label_tok.find(',', pos);
                if (comma == std::string_view::npos) comma = label_tok.size();
                std::string_view piece = label_tok.substr(pos, comma - pos);
                int value = 0;
                if (!detail::parse_int_token(piece, value) || value < 1)
                    throw ParseError(source_name, line_no,
                                     "bad label token '" + std::string(piece) + "' (labels are 1-based integers)");
                labels.push_back(value - 1);
                max_label = std::max(max_label, value);
                pos = comma + 1;
                if (comma == label_tok.size()) break;
            }
        }

        SparseRow features;
        for (std::size_t t = first_feature_token; t < tokens.size(); ++t) {
            const std::string_view tok = tokens[t];
            const std::size_t colon = tok.find(':');
            if (colon == std::string_view::npos || colon == 0 || colon + 1 >= tok.size())
                throw ParseError(source_name, line_no, "bad feature token '" + std::string(tok) + "'");
            int index = 0;
            double value = 0.0;
            if (!detail::parse_int_token(tok.substr(0, colon), index) || index < 1)
                throw ParseError(source_name, line_no, "bad feature index in '" + std::string(tok) + "'");
            if (!detail::parse_double_token(tok.substr(colon + 1), value))
                throw ParseError(source_name, line_no, "bad feature value in '" + std::string(tok) + "'");
            if (!std::isfinite(value))
                throw ParseError(source_name, line_no, "non-finite feature value in '" + std::string(tok) + "'");
            features.push_back({index - 1, value});
            max_feature = std::max(max_feature, index);
        }
        std::sort(features.begin(), features.end(),
                  [](const FeatureEntry& a, const FeatureEntry& b) { return a.index < b.index; });
        for (std::size_t t = 1; t < features.size(); ++t)
            if (features[t].index == features[t - 1].index)
                throw ParseError(source_name, line_no, "duplicate feature index " + std::to_string(features[t].index + 1));

        std::sort(labels.begin(), labels.end());
        for (std::size_t t = 1; t < labels.size(); ++t)
            if (labels[t] == labels[t - 1])
                throw ParseError(source_name, line_no, "duplicate label index " + std::to_string(labels[t] + 1));

        feature_rows.push_back(std::move(features));
        label_rows.push_back(std::move(labels));
    }

    int dim = max_feature;
    int num_labels = max_label;
    if (have_header) {
        if (header_n != static_cast<int>(feature_rows.size()))
            throw ParseError(source_name, line_no,
                             "header declares n=" + std::to_string(header_n) + " but file has " +
                                 std::to_string(feature_rows.size()) + " rows");
        if (header_d < max_feature)
            throw ParseError(source_name, line_no,
                             "feature index " + std::to_string(max_feature) + " exceeds header d=" + std::to_string(header_d));
        if (header_l < max_label)
            throw ParseError(source_name, line_no,
                             "label index " + std::to_string(max_label) + " exceeds header L=" + std::to_string(header_l));
        dim = header_d;
        num_labels = header_l;
    }

    return Dataset(FeatureMatrix(std::move(feature_rows), dim),
                   LabelMatrix(std::move(label_rows), num_labels), dataset_name);
}

inline Dataset load_svmlight_string(const std::string& text, const std::string& name = "inline") {
    std::istringstream in(text);
    return load_svmlight_stream(in, name, name);
}

inline Dataset load_svmlight_multilabel(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open dataset file: " + path);
    return load_svmlight_stream(in, path, std::filesystem::path(path).stem().string());
}

inline void write_svmlight_stream(const Dataset& ds, std::ostream& out) {
    out << "#n=" << ds.rows() << " d=" << ds.num_features() << " L=" << ds.num_labels() << "\n";
    char buf[64];
    for (int i = 0; i < ds.rows(); ++i) {
        std::string line;
        const auto& labels = ds.labels().row(i);
        for (std::size_t t = 0; t < labels.size(); ++t) {
            if (t > 0) line += ',';
            line += std::to_string(labels[t] + 1);
        }
        for (const auto& e : ds.features().row(i)) {
            std::snprintf(buf, sizeof(buf), "%.17g", e.value);
            line += ' ';
            line += std::to_string(e.index + 1);
            line += ':';
            line += buf;
        }
        if (line.empty()) line = " "; // row with no labels and no features
        out << line << "\n";
    }
}

inline std::string write_svmlight_string(const Dataset& ds) {
    std::ostringstream out;
    write_svmlight_stream(ds, out);
    return out.str();
}

inline void write_svmlight(const Dataset& ds, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    write_svmlight_stream(ds, out);
}

} // namespace mlc
