// Copyright 2026 The pvqa Authors.

// Licensed under the Apache License, Version 2.0 (the License);
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

// http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an AS IS BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include "pvqa/cmatrix.hpp"
#include "pvqa/factoring.hpp"
#include "pvqa/mesh.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>

#include "json.hpp"

/// JSON file formats.
///
///   unitary:      {"m": M, "re": [[...]], "im": [[...]]}   (row-major)
///   hamiltonian:  {"n": N, "nx": .., "ny": .., "energies": [...], "shift": ..}
///   phases:       {"m": M, "slots": [...], "theta": [...], "phi": [...],
///                  "diagonal": {"re": [...], "im": [...]}}
namespace pvqa::io {

class ParseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Throws ParseError on malformed JSON, missing keys or ragged rows.
CMatrix matrix_from_json(const nlohmann::json &j);
nlohmann::json matrix_to_json(const CMatrix &m);

nlohmann::ordered_json hamiltonian_to_json(const factoring::DiagonalHamiltonian &h);

nlohmann::json decomposition_to_json(const mesh::MeshLayout &layout,
                                     const mesh::Decomposition &d);

nlohmann::json read_json_file(const std::filesystem::path &file);
void write_json_file(const std::filesystem::path &file, const nlohmann::json &j);

} // namespace pvqa::io
