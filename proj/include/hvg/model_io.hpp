#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "hvg/cotm.hpp"
#include "hvg/encoder.hpp"

namespace hvg {

/// Everything needed to reload a trained classifier: the encoder and CoTM
/// configuration (codebooks rebuild bit-identically from their seed), the
/// frozen attribute bounds, and the learned automata states and clause
/// weights. See docs/model_format.md for the exact byte layout.
struct ModelArtifact {
  EncoderConfig encoder;
  FeatureManifest manifest;
  AttributeBounds bounds;
  CotmConfig cotm;
  std::string dataset;
  std::vector<std::int64_t> class_labels;
  std::vector<std::uint8_t> states;    // num_clauses x 2*dim automaton states
  std::vector<std::int32_t> weights;   // num_clauses x num_classes
};

ModelArtifact make_artifact(const CotmModel& model, const CodebookSet& books,
                            const std::string& dataset,
                            const std::vector<std::int64_t>& class_labels);

void save_model(const std::filesystem::path& path, const ModelArtifact& artifact);
ModelArtifact load_model(const std::filesystem::path& path);

/// Rebuilds the clause bank (include lists derived from the states) and
/// weights into a usable model.
CotmModel restore_model(const ModelArtifact& artifact);

/// Rebuilds the codebooks from the persisted parameters.
CodebookSet restore_codebooks(const ModelArtifact& artifact);

}  // namespace hvg
