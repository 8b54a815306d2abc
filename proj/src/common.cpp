#include "bestpath/common.hpp"

namespace bestpath {

std::string to_string(Penalty p) {
    return p == Penalty::Aic ? "aic" : "bic";
}

std::string to_string(PenaltyStyle s) {
    return s == PenaltyStyle::Paper ? "paper" : "edwards";
}

std::string to_string(VarianceModel m) {
    return m == VarianceModel::Homogeneous ? "homogeneous" : "heterogeneous";
}

Penalty parse_penalty(const std::string& s) {
    if (s == "aic") return Penalty::Aic;
    if (s == "bic") return Penalty::Bic;
    throw DataError("unknown penalty '" + s + "' (expected aic or bic)");
}

PenaltyStyle parse_penalty_style(const std::string& s) {
    if (s == "paper") return PenaltyStyle::Paper;
    if (s == "edwards") return PenaltyStyle::Edwards;
    throw DataError("unknown penalty style '" + s + "' (expected paper or edwards)");
}

VarianceModel parse_variance_model(const std::string& s) {
    if (s == "homogeneous") return VarianceModel::Homogeneous;
    if (s == "heterogeneous") return VarianceModel::Heterogeneous;
    throw DataError("unknown variance model '" + s +
                    "' (expected homogeneous or heterogeneous)");
}

}  // namespace bestpath
