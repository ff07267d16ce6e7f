#pragma once

#include <string>
#include <vector>

#include "mgsda/classifier.hpp"
#include "mgsda/dataset.hpp"
#include "mgsda/linalg.hpp"

namespace mgsda {

// Versioned text model format. One fit per penalty value; `selected` names the
// entry predict uses by default. Doubles are written in shortest round-trip
// form, so write -> read -> write reproduces the file byte for byte.
//
//   mgsda-model 1
//   groups <G>
//   features <p>
//   standardize <none|feature|row>
//   center <p doubles>          (feature mode only)
//   scale <p doubles>           (feature mode only)
//   label <name>                (x G, rest of line verbatim)
//   priors <G doubles>
//   mean <p doubles>            (x G, ascending group order)
//   W <p doubles>               (x p, row-major)
//   entries <K>
//   selected <index>
//   lambda <double> converged <0|1>
//   v <G-1 doubles>             (x p)
//   ... further entries ...
struct ModelEntry {
    double lambda = 0.0;
    bool converged = false;
    Matrix V; // p x (G-1)
};

struct ModelFile {
    int groups = 0;
    int features = 0;
    Standardization standardization;
    std::vector<std::string> label_names; // size G
    Vector priors;
    Matrix means; // G x p
    Matrix W;     // p x p
    std::vector<ModelEntry> entries;
    int selected = 0;
};

std::string to_text(const ModelFile& model);
ModelFile model_from_text(const std::string& text);

void write_model(const std::string& path, const ModelFile& model);
ModelFile read_model(const std::string& path);

// Rebuilds the classifier from a stored entry (default: the selected one).
DiscriminantModel to_classifier(const ModelFile& model, int entry_index = -1);

} // namespace mgsda
