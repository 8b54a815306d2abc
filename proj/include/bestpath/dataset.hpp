#ifndef BESTPATH_DATASET_HPP
#define BESTPATH_DATASET_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace bestpath {

enum class VariableKind { Discrete, Continuous };

std::string to_string(VariableKind k);

// One variable. Discrete columns store integer level codes plus the level
// labels in first-appearance order; continuous columns store doubles.
struct Column {
    std::string name;
    VariableKind kind = VariableKind::Continuous;
    std::vector<double> values;       // continuous payload
    std::vector<int> codes;           // discrete payload
    std::vector<std::string> levels;  // discrete level labels by code

    int n_levels() const { return static_cast<int>(levels.size()); }
};

class Dataset {
public:
    Dataset() = default;
    explicit Dataset(std::vector<Column> cols);

    int n() const { return n_rows_; }
    int p() const { return static_cast<int>(cols_.size()); }

    const Column& col(int i) const { return cols_.at(static_cast<std::size_t>(i)); }
    const std::vector<Column>& cols() const { return cols_; }

    // Index of a named column; DataError when absent.
    int index_of(const std::string& name) const;

    std::vector<std::string> names() const;

    // Row-subset copy. Discrete level encodings are preserved even when a
    // level is unobserved in the subset, so designs built against the parent
    // and the subset agree column-for-column.
    Dataset subset(const std::vector<int>& rows) const;

    const std::vector<std::string>& warnings() const { return warnings_; }
    void add_warning(std::string w) { warnings_.push_back(std::move(w)); }

private:
    std::vector<Column> cols_;
    int n_rows_ = 0;
    std::vector<std::string> warnings_;
};

struct LoadOptions {
    // Columns whose missing fraction exceeds this are dropped before any
    // row-wise deletion.
    double missing_col_frac = 0.5;
    // Inference: integer-valued numeric columns with at most this many
    // distinct values are treated as discrete.
    int max_levels = 10;
    // Per-column kind overrides (wins over inference). Unknown names are an
    // error.
    std::map<std::string, VariableKind> schema;
};

// Fields equal to one of these (after trimming) are missing.
bool is_missing_token(const std::string& field);

VariableKind infer_kind(const std::vector<std::string>& values, int max_levels);

// Parse and clean a CSV file: header required; quoted fields per RFC 4180;
// columns over the missing threshold dropped, then incomplete rows dropped,
// then kinds assigned (schema override, else inference), then constant
// columns dropped. Each drop is recorded as a warning on the dataset.
// DataError if fewer than 3 rows or 2 columns survive.
Dataset load_csv(const std::string& path, const LoadOptions& opts = {});

// Schema files are two-column CSVs: name,kind with kind in
// {discrete, continuous}.
std::map<std::string, VariableKind> load_schema(const std::string& path);

// FNV-1a 64-bit hash of a byte string; used to fingerprint input files.
std::uint64_t fnv1a64(const std::string& bytes);

// Hash of a file's raw bytes, rendered as 16 hex digits.
std::string file_hash_hex(const std::string& path);

}  // namespace bestpath

#endif
