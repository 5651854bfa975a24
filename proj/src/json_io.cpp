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
#include "pvqa/json_io.hpp"

#include <fstream>
#include <sstream>

namespace pvqa::io {

namespace {

std::vector<std::vector<double>> read_rows(const nlohmann::json &j,
                                           const char *key, std::size_t m) {
    if (!j.contains(key) || !j.at(key).is_array()) {
        throw ParseError(std::string("missing array '") + key + "'");
    }
    const auto &rows = j.at(key);
    if (rows.size() != m) {
        throw ParseError(std::string("'") + key + "' has " +
                         std::to_string(rows.size()) + " rows, expected " +
                         std::to_string(m));
    }
    std::vector<std::vector<double>> out;
    for (const auto &row : rows) {
        if (!row.is_array() || row.size() != m) {
            throw ParseError(std::string("'") + key + "' row is not " +
                             std::to_string(m) + " numbers");
        }
        std::vector<double> r;
        for (const auto &v : row) {
            if (!v.is_number()) {
                throw ParseError(std::string("'") + key +
                                 "' contains a non-number");
            }
            r.push_back(v.get<double>());
        }
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace

CMatrix matrix_from_json(const nlohmann::json &j) {
    if (!j.is_object() || !j.contains("m") || !j.at("m").is_number_unsigned()) {
        throw ParseError("matrix JSON needs an unsigned integer 'm'");
    }
    const auto m = j.at("m").get<std::size_t>();
    if (m == 0) {
        throw ParseError("'m' must be positive");
    }
    const auto re = read_rows(j, "re", m);
    const auto im = read_rows(j, "im", m);
    CMatrix out(m, m);
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t c = 0; c < m; ++c) {
            out(r, c) = cplx(re[r][c], im[r][c]);
        }
    }
    return out;
}

nlohmann::json matrix_to_json(const CMatrix &m) {
    nlohmann::json re = nlohmann::json::array();
    nlohmann::json im = nlohmann::json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        nlohmann::json rr = nlohmann::json::array();
        nlohmann::json ii = nlohmann::json::array();
        for (const auto &x : m.row(r)) {
            rr.push_back(x.real());
            ii.push_back(x.imag());
        }
        re.push_back(std::move(rr));
        im.push_back(std::move(ii));
    }
    return {{"m", m.rows()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

nlohmann::ordered_json hamiltonian_to_json(const factoring::DiagonalHamiltonian &h) {
    nlohmann::ordered_json j;
    j["n"] = h.n();
    j["nx"] = h.layout().nx;
    j["ny"] = h.layout().ny;
    j["energies"] = h.energies();
    j["shift"] = h.shift();
    return j;
}

nlohmann::json decomposition_to_json(const mesh::MeshLayout &layout,
                                     const mesh::Decomposition &d) {
    std::vector<double> re;
    std::vector<double> im;
    for (const auto &x : d.diagonal) {
        re.push_back(x.real());
        im.push_back(x.imag());
    }
    const auto slots = layout.slots();
    return {{"m", layout.modes()},
            {"slots", std::vector<std::size_t>(slots.begin(), slots.end())},
            {"theta", d.phases.thetas},
            {"phi", d.phases.phis},
            {"diagonal", {{"re", re}, {"im", im}}}};
}

nlohmann::json read_json_file(const std::filesystem::path &file) {
    std::ifstream in(file);
    if (!in) {
        throw ParseError("cannot open " + file.string());
    }
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error &e) {
        throw ParseError(file.string() + ": " + e.what());
    }
}

void write_json_file(const std::filesystem::path &file, const nlohmann::json &j) {
    std::ofstream out(file, std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open " + file.string() + " for writing");
    }
    out << j.dump(2) << '\n';
    if (!out) {
        throw std::runtime_error("failed writing " + file.string());
    }
}

} // namespace pvqa::io
