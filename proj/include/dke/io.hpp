#pragma once

#include <filesystem>
#include <string>

#include "dke/embedding.hpp"
#include "dke/mmspace.hpp"
#include "dke/persistence.hpp"
#include "dke/spectral.hpp"
#include "dke/transforms.hpp"

namespace dke {

/// Shortest decimal form that parses back to the same double.
std::string format_double(double v);

/// Writes via a temporary file in the same directory plus a rename.
void atomic_write(const std::filesystem::path& path, const std::string& content);

// Metric measure spaces.
// CSV layout: header "# dke-mms v1 n=<n>", n distance rows, one measure row.
void write_mms_csv(const std::filesystem::path& path, const MetricMeasureSpace& mms);
MetricMeasureSpace read_mms_csv(const std::filesystem::path& path);
void write_mms_json(const std::filesystem::path& path, const MetricMeasureSpace& mms);
MetricMeasureSpace read_mms_json(const std::filesystem::path& path);
/// Dispatches on the file extension (.csv or .json).
MetricMeasureSpace load_mms(const std::filesystem::path& path);

// Spectra: JSON {eigenvalues, vectors (column-major), sign_rule, tie_warnings};
// CSV is a plain eigenvalue list for plotting.
void write_spectrum_json(const std::filesystem::path& path, const Spectrum& spectrum);
void write_eigenvalues_csv(const std::filesystem::path& path, const Spectrum& spectrum);

// Embeddings: CSV columns re(alpha_1), im(alpha_1), ...; JSON mirror.
void write_embedding_csv(const std::filesystem::path& path, const Embedding& emb);
void write_embedding_json(const std::filesystem::path& path, const Embedding& emb);

// Diagrams: CSV "dim,birth,death" with an "inf" token for essential bars.
void write_diagram_csv(const std::filesystem::path& path, const GradedDiagram& diagram);

// Step functions: CSV "breakpoint,value" rows; the final breakpoint closes
// the support with value 0.
void write_step_csv(const std::filesystem::path& path, const StepFunction& sf);

// Transform results: JSON array of {direction, diagram | curve} entries.
void write_transform_json(const std::filesystem::path& path, const TransformResult& result);

}  // namespace dke
