#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace dke {

/// Base class for all library errors.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad parameters, malformed input files, out-of-range arguments. CLI exit code 2.
class config_error : public error {
public:
    using error::error;
};

/// A theorem hypothesis does not hold for the given data (degenerate spectra,
/// zero separation, zero eigenvalues where nonzero ones are required). CLI exit code 3.
class hypothesis_error : public error {
public:
    using error::error;
};

/// Numerical failure: eigensolver non-convergence, non-finite values. CLI exit code 4.
class numeric_error : public error {
public:
    using error::error;
};

/// A single violated metric-measure-space invariant, with offending indices.
struct ValidationIssue {
    enum class Kind {
        NonSquare,
        NegativeEntry,
        NonzeroDiagonal,
        Asymmetry,
        TriangleViolation,
        NonpositiveMeasure,
        SizeMismatch,
    };
    Kind kind;
    int i = -1;
    int j = -1;
    int l = -1;  // third index for triangle violations
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool ok() const { return issues.empty(); }
    std::string summary() const;
};

/// Input data failed validation; carries the full report. CLI exit code 2.
class validation_error : public config_error {
public:
    explicit validation_error(ValidationReport rep)
        : config_error(rep.summary()), report(std::move(rep)) {}
    ValidationReport report;
};

}  // namespace dke
