#pragma once

#include <string>
#include <vector>

#include "thetachar/characters.hpp"

namespace thetachar {

/// One expanded term with every rational split into numerator/denominator
/// integers on serialization.
struct OutputTerm {
    Rat q_exp;
    WVec weight;
    Rat coeff;

    friend bool operator==(const OutputTerm&, const OutputTerm&) = default;
};

/// Serializable snapshot of one expanded character window. Terms are kept in
/// ascending q order, ties broken by lexicographic weight coordinates, so
/// the serialized form is bit-identical across runs.
struct OutputRecord {
    std::string algebra;
    long u = 1;
    long y_index = 0;
    WVec beta;
    Rat order;
    Rat t_exp;
    int unit_pow = 0;
    std::vector<OutputTerm> terms;

    friend bool operator==(const OutputRecord&, const OutputRecord&) = default;
};

OutputRecord make_record(const std::string& algebra, const BoundaryWeight& d, long u,
                         const Rat& order, const GradedSeries& s);

/// JSON with sorted object keys and {num, den} integer pairs for rationals.
std::string record_to_json(const OutputRecord& rec);
OutputRecord record_from_json(const std::string& text);

/// Fixed-width text rendering of the same data.
std::string record_to_text(const OutputRecord& rec);

/// Rebuilds the series the record was taken from (untruncated window copy).
GradedSeries record_series(const OutputRecord& rec, int rank);

} // namespace thetachar
