#include "gsgp/slope_data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

namespace gsgp {

namespace {

std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

double parse_double(std::string_view tok, std::size_t row, std::string_view col) {
    double v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size() || !std::isfinite(v)) {
        throw DataError("row " + std::to_string(row) + ", column " + std::string(col) +
                        ": malformed number '" + std::string(tok) + "'");
    }
    return v;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return out;
}

} // namespace

SlopeDataset::SlopeDataset(std::vector<SlopeSample> samples) : samples_(std::move(samples)) {
    for (std::size_t i = 0; i < samples_.size(); ++i) {
        const SlopeSample& s = samples_[i];
        if (!(s.gamma > 0) || !(s.height > 0) || s.ru < 0 || s.cohesion < 0) {
            throw DataError("sample " + std::to_string(i + 1) + ": invalid feature values");
        }
        if (s.status && *s.status != 1 && *s.status != -1) {
            throw DataError("sample " + std::to_string(i + 1) + ": S must be +1 or -1");
        }
        if (s.status.has_value() != samples_[0].status.has_value() ||
            s.fs.has_value() != samples_[0].fs.has_value()) {
            throw DataError("inconsistent label presence across samples");
        }
    }
}

bool SlopeDataset::has_status() const {
    return !samples_.empty() && samples_[0].status.has_value();
}

bool SlopeDataset::has_fs() const {
    return !samples_.empty() && samples_[0].fs.has_value();
}

DataSplit head_split(const SlopeDataset& ds, std::size_t n_train) {
    if (n_train == 0 || n_train >= ds.size()) {
        throw DataError("n_train must be in (0, dataset size); got " + std::to_string(n_train) +
                        " of " + std::to_string(ds.size()));
    }
    DataSplit split;
    for (std::size_t i = 0; i < n_train; ++i) split.train_indices.push_back(i);
    for (std::size_t i = n_train; i < ds.size(); ++i) split.test_indices.push_back(i);
    return split;
}

SlopeDataset parse_csv(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string_view line =
            text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (!line.empty()) lines.push_back(line);
        if (nl == std::string_view::npos) break;
        pos = nl + 1;
    }
    if (lines.empty()) throw DataError("missing header row");

    auto header = split_fields(lines[0]);
    std::vector<int> feature_slot(header.size(), -1); // -1 none, 0..5 feature, 6 S, 7 FS
    std::array<bool, kFeatureCount> seen{};
    bool has_s = false, has_fs = false;
    for (std::size_t c = 0; c < header.size(); ++c) {
        std::string_view name = header[c];
        auto it = std::find(kFeatureNames.begin(), kFeatureNames.end(), name);
        if (it != kFeatureNames.end()) {
            std::size_t idx = static_cast<std::size_t>(it - kFeatureNames.begin());
            if (seen[idx]) throw DataError("duplicate column '" + std::string(name) + "'");
            seen[idx] = true;
            feature_slot[c] = static_cast<int>(idx);
        } else if (name == "S") {
            feature_slot[c] = 6;
            has_s = true;
        } else if (name == "FS") {
            feature_slot[c] = 7;
            has_fs = true;
        } else {
            throw DataError("unknown column '" + std::string(name) + "'");
        }
    }
    for (std::size_t i = 0; i < kFeatureCount; ++i) {
        if (!seen[i]) throw DataError("missing column '" + std::string(kFeatureNames[i]) + "'");
    }

    std::vector<SlopeSample> samples;
    for (std::size_t r = 1; r < lines.size(); ++r) {
        auto fields = split_fields(lines[r]);
        if (fields.size() != header.size()) {
            throw DataError("row " + std::to_string(r) + ": expected " +
                            std::to_string(header.size()) + " fields, got " +
                            std::to_string(fields.size()));
        }
        SlopeSample s{};
        for (std::size_t c = 0; c < fields.size(); ++c) {
            double v = parse_double(fields[c], r, header[c]);
            switch (feature_slot[c]) {
                case 0: s.gamma = v; break;
                case 1: s.cohesion = v; break;
                case 2: s.phi = v; break;
                case 3: s.beta = v; break;
                case 4: s.height = v; break;
                case 5: s.ru = v; break;
                case 6:
                    if (v != 1.0 && v != -1.0) {
                        throw DataError("row " + std::to_string(r) + ", column S: value " +
                                        std::string(fields[c]) + " not in {1, -1}");
                    }
                    s.status = static_cast<int>(v);
                    break;
                case 7: s.fs = v; break;
                default: break;
            }
        }
        if (!has_s) s.status.reset();
        if (!has_fs) s.fs.reset();
        samples.push_back(s);
    }
    return SlopeDataset(std::move(samples));
}

std::string to_csv(const SlopeDataset& ds) {
    std::ostringstream out;
    out << "gamma,c,phi,beta,H,ru";
    if (ds.has_status()) out << ",S";
    if (ds.has_fs()) out << ",FS";
    out << "\n";
    for (const SlopeSample& s : ds.samples()) {
        out << format_double(s.gamma) << ',' << format_double(s.cohesion) << ','
            << format_double(s.phi) << ',' << format_double(s.beta) << ','
            << format_double(s.height) << ',' << format_double(s.ru);
        if (ds.has_status()) out << ',' << *s.status;
        if (ds.has_fs()) out << ',' << format_double(*s.fs);
        out << "\n";
    }
    return out.str();
}

} // namespace gsgp
