#include "bestpath/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "bestpath/common.hpp"

namespace bestpath {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

bool parse_double(const std::string& s, double* out) {
    const std::string t = trim(s);
    if (t.empty()) return false;
    const char* begin = t.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end != begin + t.size()) return false;
    if (!std::isfinite(v)) return false;
    *out = v;
    return true;
}

// RFC 4180 record reader. Handles quoted fields containing commas, escaped
// quotes ("") and embedded newlines; both LF and CRLF records.
std::vector<std::vector<std::string>> parse_csv(const std::string& text,
                                                const std::string& path) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool in_quotes = false;
    bool field_was_quoted = false;

    auto end_field = [&] {
        row.push_back(field_was_quoted ? field : trim(field));
        field.clear();
        field_was_quoted = false;
    };
    auto end_row = [&] {
        end_field();
        rows.push_back(std::move(row));
        row.clear();
    };

    std::size_t i = 0;
    // Skip a UTF-8 byte-order mark if present.
    if (text.size() >= 3 && text.compare(0, 3, "\xef\xbb\xbf") == 0) i = 3;

    for (; i < text.size(); ++i) {
        const char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"' && trim(field).empty() && !field_was_quoted) {
            in_quotes = true;
            field_was_quoted = true;
            field.clear();
        } else if (c == ',') {
            end_field();
        } else if (c == '\n') {
            if (!field.empty() && field.back() == '\r') field.pop_back();
            end_row();
        } else {
            field += c;
        }
    }
    if (in_quotes) {
        throw DataError(path + ": unterminated quoted field");
    }
    if (!field.empty() || field_was_quoted || !row.empty()) {
        if (!field.empty() && field.back() == '\r') field.pop_back();
        end_row();
    }
    // Drop fully empty trailing records (e.g. final newline artifacts).
    while (!rows.empty() && rows.back().size() == 1 && rows.back()[0].empty()) {
        rows.pop_back();
    }
    return rows;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Canonical label for a numeric discrete level: integer rendering, so "3"
// and "3.0" map to the same level.
std::string canonical_int_label(double v) {
    return std::to_string(static_cast<long long>(std::llround(v)));
}

}  // namespace

std::string to_string(VariableKind k) {
    return k == VariableKind::Discrete ? "discrete" : "continuous";
}

Dataset::Dataset(std::vector<Column> cols) : cols_(std::move(cols)) {
    n_rows_ = cols_.empty() ? 0
              : cols_[0].kind == VariableKind::Discrete
                  ? static_cast<int>(cols_[0].codes.size())
                  : static_cast<int>(cols_[0].values.size());
    for (const Column& c : cols_) {
        const int n = c.kind == VariableKind::Discrete
                          ? static_cast<int>(c.codes.size())
                          : static_cast<int>(c.values.size());
        if (n != n_rows_) {
            throw DataError("column '" + c.name + "' has " + std::to_string(n) +
                            " rows, expected " + std::to_string(n_rows_));
        }
    }
}

int Dataset::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < cols_.size(); ++i) {
        if (cols_[i].name == name) return static_cast<int>(i);
    }
    throw DataError("no such column: " + name);
}

std::vector<std::string> Dataset::names() const {
    std::vector<std::string> out;
    out.reserve(cols_.size());
    for (const Column& c : cols_) out.push_back(c.name);
    return out;
}

Dataset Dataset::subset(const std::vector<int>& rows) const {
    std::vector<Column> out;
    out.reserve(cols_.size());
    for (const Column& c : cols_) {
        Column sc;
        sc.name = c.name;
        sc.kind = c.kind;
        sc.levels = c.levels;
        if (c.kind == VariableKind::Discrete) {
            sc.codes.reserve(rows.size());
            for (int r : rows) sc.codes.push_back(c.codes.at(static_cast<std::size_t>(r)));
        } else {
            sc.values.reserve(rows.size());
            for (int r : rows) sc.values.push_back(c.values.at(static_cast<std::size_t>(r)));
        }
        out.push_back(std::move(sc));
    }
    Dataset ds(std::move(out));
    return ds;
}

bool is_missing_token(const std::string& field) {
    const std::string t = trim(field);
    return t.empty() || t == "NA" || t == "?";
}

VariableKind infer_kind(const std::vector<std::string>& values, int max_levels) {
    bool all_numeric = true;
    bool all_integer = true;
    std::set<long long> int_values;
    for (const std::string& s : values) {
        double v = 0.0;
        if (!parse_double(s, &v)) {
            all_numeric = false;
            break;
        }
        if (v != std::floor(v) || std::fabs(v) > 1e15) {
            all_integer = false;
        } else if (all_integer) {
            int_values.insert(static_cast<long long>(v));
        }
    }
    if (!all_numeric) return VariableKind::Discrete;
    if (all_integer && static_cast<int>(int_values.size()) <= max_levels) {
        return VariableKind::Discrete;
    }
    return VariableKind::Continuous;
}

Dataset load_csv(const std::string& path, const LoadOptions& opts) {
    const std::string text = read_file(path);
    const auto rows = parse_csv(text, path);
    if (rows.size() < 2) {
        throw DataError(path + ": need a header row and at least one data row");
    }

    const std::vector<std::string>& header = rows[0];
    const std::size_t p0 = header.size();
    {
        std::unordered_set<std::string> seen;
        for (const std::string& h : header) {
            if (h.empty()) throw DataError(path + ": empty column name in header");
            if (!seen.insert(h).second) {
                throw DataError(path + ": duplicate column name '" + h + "'");
            }
        }
    }
    for (std::size_t r = 1; r < rows.size(); ++r) {
        if (rows[r].size() != p0) {
            throw DataError(path + ": row " + std::to_string(r + 1) + " has " +
                            std::to_string(rows[r].size()) + " fields, expected " +
                            std::to_string(p0));
        }
    }
    const std::size_t n0 = rows.size() - 1;

    std::vector<std::string> warnings;

    // Pass 1: drop columns with too much missing data.
    std::vector<std::size_t> kept_cols;
    for (std::size_t c = 0; c < p0; ++c) {
        std::size_t miss = 0;
        for (std::size_t r = 1; r < rows.size(); ++r) {
            if (is_missing_token(rows[r][c])) ++miss;
        }
        const double frac = static_cast<double>(miss) / static_cast<double>(n0);
        if (frac > opts.missing_col_frac) {
            char buf[160];
            std::snprintf(buf, sizeof(buf),
                          "dropped column '%s': %.1f%% missing exceeds threshold %.1f%%",
                          header[c].c_str(), 100.0 * frac,
                          100.0 * opts.missing_col_frac);
            warnings.emplace_back(buf);
        } else {
            kept_cols.push_back(c);
        }
    }

    // Pass 2: drop rows that still have missing fields.
    std::vector<std::size_t> kept_rows;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        bool ok = true;
        for (std::size_t c : kept_cols) {
            if (is_missing_token(rows[r][c])) {
                ok = false;
                break;
            }
        }
        if (ok) kept_rows.push_back(r);
    }
    if (kept_rows.size() < n0) {
        warnings.push_back("dropped " + std::to_string(n0 - kept_rows.size()) +
                           " of " + std::to_string(n0) +
                           " rows with missing values");
    }

    for (const auto& [name, kind] : opts.schema) {
        (void)kind;
        if (std::none_of(kept_cols.begin(), kept_cols.end(), [&](std::size_t c) {
                return header[c] == name;
            })) {
            bool existed = std::find(header.begin(), header.end(), name) != header.end();
            if (existed) continue;  // column was dropped for missingness
            throw DataError("schema names unknown column '" + name + "'");
        }
    }

    // Pass 3: type and materialize the surviving columns.
    std::vector<Column> cols;
    for (std::size_t c : kept_cols) {
        std::vector<std::string> raw;
        raw.reserve(kept_rows.size());
        for (std::size_t r : kept_rows) raw.push_back(rows[r][c]);

        VariableKind kind;
        const auto it = opts.schema.find(header[c]);
        if (it != opts.schema.end()) {
            kind = it->second;
        } else {
            kind = infer_kind(raw, opts.max_levels);
        }

        Column col;
        col.name = header[c];
        col.kind = kind;
        if (kind == VariableKind::Continuous) {
            col.values.reserve(raw.size());
            for (std::size_t i = 0; i < raw.size(); ++i) {
                double v = 0.0;
                if (!parse_double(raw[i], &v)) {
                    throw DataError(path + ": column '" + col.name +
                                    "' declared continuous but value '" + raw[i] +
                                    "' is not numeric");
                }
                col.values.push_back(v);
            }
        } else {
            // Numeric-looking discrete levels are canonicalized through their
            // integer value so "3" and "3.0" coincide.
            const bool numeric_levels =
                infer_kind(raw, std::numeric_limits<int>::max()) !=
                    VariableKind::Continuous &&
                [&] {
                    for (const std::string& s : raw) {
                        double v = 0.0;
                        if (!parse_double(s, &v) || v != std::floor(v)) return false;
                    }
                    return true;
                }();
            std::unordered_map<std::string, int> code_of;
            col.codes.reserve(raw.size());
            for (const std::string& s : raw) {
                std::string label = trim(s);
                if (numeric_levels) {
                    double v = 0.0;
                    parse_double(s, &v);
                    label = canonical_int_label(v);
                }
                auto [pos, inserted] =
                    code_of.emplace(label, static_cast<int>(col.levels.size()));
                if (inserted) col.levels.push_back(label);
                col.codes.push_back(pos->second);
            }
        }
        cols.push_back(std::move(col));
    }

    // Pass 4: drop constant columns.
    std::vector<Column> live;
    for (Column& col : cols) {
        bool constant;
        if (col.kind == VariableKind::Discrete) {
            constant = col.n_levels() <= 1;
        } else {
            constant = std::adjacent_find(col.values.begin(), col.values.end(),
                                          std::not_equal_to<>()) == col.values.end();
        }
        if (constant) {
            warnings.push_back("dropped constant column '" + col.name + "'");
        } else {
            live.push_back(std::move(col));
        }
    }

    if (kept_rows.size() < 3) {
        throw DataError(path + ": only " + std::to_string(kept_rows.size()) +
                        " usable rows after cleaning (need at least 3)");
    }
    if (live.size() < 2) {
        throw DataError(path + ": only " + std::to_string(live.size()) +
                        " usable columns after cleaning (need at least 2)");
    }

    Dataset ds(std::move(live));
    for (std::string& w : warnings) ds.add_warning(std::move(w));
    return ds;
}

std::map<std::string, VariableKind> load_schema(const std::string& path) {
    const std::string text = read_file(path);
    const auto rows = parse_csv(text, path);
    std::map<std::string, VariableKind> schema;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() == 1 && rows[r][0].empty()) continue;
        if (rows[r].size() != 2) {
            throw DataError(path + ": schema row " + std::to_string(r + 1) +
                            " must be 'name,kind'");
        }
        // Tolerate an optional header row.
        if (r == 0 && rows[r][0] == "name" && rows[r][1] == "kind") continue;
        const std::string& name = rows[r][0];
        const std::string& kind = rows[r][1];
        if (schema.count(name)) {
            throw DataError(path + ": duplicate schema entry for '" + name + "'");
        }
        if (kind == "discrete") {
            schema[name] = VariableKind::Discrete;
        } else if (kind == "continuous") {
            schema[name] = VariableKind::Continuous;
        } else {
            throw DataError(path + ": unknown kind '" + kind + "' for '" + name +
                            "' (expected discrete or continuous)");
        }
    }
    return schema;
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char b : bytes) {
        h ^= b;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string file_hash_hex(const std::string& path) {
    const std::uint64_t h = fnv1a64(read_file(path));
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(h));
    return std::string(buf);
}

}  // namespace bestpath
