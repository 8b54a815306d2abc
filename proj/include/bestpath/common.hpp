#ifndef BESTPATH_COMMON_HPP
#define BESTPATH_COMMON_HPP

#include <stdexcept>
#include <string>

namespace bestpath {

// Thrown for malformed or unusable input (bad CSV, unknown column, ...).
// The CLI maps it to exit code 2.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Thrown when a computation cannot proceed (singular design, zero-variance
// response, every path step failing cross-validation). CLI exit code 3.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

enum class Penalty { Aic, Bic };

// Penalty constants applied to mutual information edge weights.
//   Paper:   I - 2k   /  I - ln(n) k
//   Edwards: I - k    /  I - ln(n)/2 k
enum class PenaltyStyle { Paper, Edwards };

// Variance assumption for the discrete/continuous mutual information
// estimator: constant across levels, or level-specific.
enum class VarianceModel { Homogeneous, Heterogeneous };

std::string to_string(Penalty p);
std::string to_string(PenaltyStyle s);
std::string to_string(VarianceModel m);

Penalty parse_penalty(const std::string& s);
PenaltyStyle parse_penalty_style(const std::string& s);
VarianceModel parse_variance_model(const std::string& s);

}  // namespace bestpath

#endif
