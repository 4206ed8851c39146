// Copyright 2026 The qsdc developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qsdc/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace qsdc {

using nlohmann::json;

std::uint64_t fnv1a64(const void* data, std::size_t size) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::size_t i = 0; i < size; ++i) {
        h ^= bytes[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hash_hex(std::uint64_t h) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "fnv1a64:%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string hash_of_string(const std::string& s) { return hash_hex(fnv1a64(s.data(), s.size())); }

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

double round_sig(double x) {
    if (x == 0.0 || !std::isfinite(x)) return x;
    return std::strtod(format_double(x).c_str(), nullptr);
}

namespace {

json matrix_to_json(const Matrix& m) {
    json re = json::array(), im = json::array();
    for (long i = 0; i < m.rows(); ++i) {
        json re_row = json::array(), im_row = json::array();
        for (long j = 0; j < m.cols(); ++j) {
            re_row.push_back(round_sig(m(i, j).real()));
            im_row.push_back(round_sig(m(i, j).imag()));
        }
        re.push_back(std::move(re_row));
        im.push_back(std::move(im_row));
    }
    return json{{"re", std::move(re)}, {"im", std::move(im)}};
}

Matrix matrix_from_json(const json& j) {
    if (!j.contains("re") || !j.contains("im"))
        throw std::invalid_argument("matrix payload: missing re/im arrays");
    const json& re = j.at("re");
    const json& im = j.at("im");
    const long rows = static_cast<long>(re.size());
    if (rows == 0 || im.size() != re.size())
        throw std::invalid_argument("matrix payload: re/im shape mismatch");
    const long cols = static_cast<long>(re.at(0).size());
    Matrix m(rows, cols);
    for (long i = 0; i < rows; ++i) {
        const json& re_row = re.at(i);
        const json& im_row = im.at(i);
        if (static_cast<long>(re_row.size()) != cols ||
            static_cast<long>(im_row.size()) != cols)
            throw std::invalid_argument("matrix payload: ragged rows");
        for (long j2 = 0; j2 < cols; ++j2)
            m(i, j2) = Complex(re_row.at(j2).get<double>(), im_row.at(j2).get<double>());
    }
    return m;
}

json policy_to_json(const NumericPolicy& policy) {
    return json{{"symmetry_tol", policy.symmetry_tol},
                {"psd_tol", policy.psd_tol},
                {"trace_tol", policy.trace_tol},
                {"zero_tol", policy.zero_tol},
                {"completeness_tol", policy.completeness_tol},
                {"max_dim", policy.max_dim}};
}

json meta_to_json(const OutputMeta& meta) {
    return json{{"tool", meta.tool},
                {"version", meta.version},
                {"seed", meta.seed},
                {"input_hash", meta.input_hash},
                {"policy", policy_to_json(meta.policy)}};
}

json density_to_json_obj(const DensityOperator& rho) {
    json j = matrix_to_json(rho.matrix);
    j["d_a"] = rho.d_a;
    j["d_b"] = rho.d_b;
    return j;
}

DensityOperator density_from_json_obj(const json& j, const NumericPolicy& policy) {
    DensityOperator rho;
    rho.d_a = j.at("d_a").get<int>();
    rho.d_b = j.at("d_b").get<int>();
    rho.matrix = matrix_from_json(j);
    const Complex tr = rho.matrix.trace();
    if (std::abs(tr - Complex(1.0, 0.0)) > 1e-6)
        throw InvariantViolation("state document: trace differs from one beyond repair");
    rho.matrix /= tr.real();
    validate_density(rho, policy);
    return rho;
}

} // namespace

std::string density_to_json(const DensityOperator& rho) {
    return density_to_json_obj(rho).dump(2) + "\n";
}

DensityOperator density_from_json(const std::string& text, const NumericPolicy& policy) {
    return density_from_json_obj(json::parse(text), policy);
}

std::string protocol_to_json(const ProtocolDocument& doc, const OutputMeta* meta) {
    json j;
    j["shared_state"] = density_to_json_obj(doc.family.shared_state);
    json encodings = json::array();
    for (const Encoding& enc : doc.family.encodings) {
        json e = matrix_to_json(enc.op);
        e["type"] = enc.kind == Encoding::Kind::Unitary ? "unitary" : "choi";
        encodings.push_back(std::move(e));
    }
    j["encodings"] = std::move(encodings);
    json povms = json::array();
    for (const Povm& povm : doc.povms) {
        json effects = json::array();
        for (const Matrix& effect : povm.effects) effects.push_back(matrix_to_json(effect));
        povms.push_back(std::move(effects));
    }
    j["povms"] = std::move(povms);
    if (meta != nullptr) j["meta"] = meta_to_json(*meta);
    return j.dump(2) + "\n";
}

ProtocolDocument protocol_from_json(const std::string& text, const NumericPolicy& policy) {
    const json j = json::parse(text);
    ProtocolDocument doc;
    doc.family.shared_state = density_from_json_obj(j.at("shared_state"), policy);
    for (const json& e : j.at("encodings")) {
        const std::string type = e.at("type").get<std::string>();
        if (type == "unitary")
            doc.family.encodings.push_back(Encoding::unitary(matrix_from_json(e)));
        else if (type == "choi")
            doc.family.encodings.push_back(Encoding::choi(matrix_from_json(e)));
        else
            throw std::invalid_argument("protocol document: unknown encoding type " + type);
    }
    for (const json& p : j.at("povms")) {
        Povm povm;
        for (const json& effect : p) povm.effects.push_back(matrix_from_json(effect));
        doc.povms.push_back(std::move(povm));
    }
    validate_family(doc.family, policy);
    for (const Povm& povm : doc.povms) validate_povm(povm, policy);
    return doc;
}

std::string hash_of_family(const PreparationFamily& family) {
    ProtocolDocument doc;
    doc.family = family;
    return hash_of_string(protocol_to_json(doc));
}

std::string hash_of_povm(const Povm& povm) {
    json effects = json::array();
    for (const Matrix& effect : povm.effects) effects.push_back(matrix_to_json(effect));
    return hash_of_string(effects.dump());
}

std::string verdict_to_json(const CertificationVerdict& verdict,
                            const std::string& family_hash, const std::string& povm_hash) {
    json j;
    j["schmidt_lower_bound"] = verdict.schmidt_lower_bound;
    j["entangled"] = verdict.entangled;
    j["maximally_entangled_selftest"] = verdict.maximally_entangled_selftest;
    j["margin"] = round_sig(verdict.margin);
    j["inputs"] = json{{"family_hash", family_hash}, {"povm_hash", povm_hash}};
    return j.dump(2) + "\n";
}

std::string meta_comment_lines(const OutputMeta& meta) {
    std::ostringstream out;
    out << "# tool=" << meta.tool << " version=" << meta.version << "\n";
    out << "# seed=" << meta.seed << "\n";
    out << "# input_hash=" << meta.input_hash << "\n";
    out << "# policy symmetry_tol=" << format_double(meta.policy.symmetry_tol)
        << " psd_tol=" << format_double(meta.policy.psd_tol)
        << " trace_tol=" << format_double(meta.policy.trace_tol)
        << " zero_tol=" << format_double(meta.policy.zero_tol)
        << " completeness_tol=" << format_double(meta.policy.completeness_tol)
        << " max_dim=" << meta.policy.max_dim << "\n";
    return out.str();
}

std::string behavior_to_csv(const Behavior& behavior, const OutputMeta& meta) {
    std::ostringstream out;
    out << meta_comment_lines(meta);
    out << "b,x,y,p\n";
    const ScenarioShape& shape = behavior.shape();
    for (int x = 0; x < shape.n_preparations; ++x)
        for (int y = 0; y < shape.n_settings; ++y)
            for (int b = 0; b < shape.n_outcomes; ++b)
                out << b << ',' << x << ',' << y << ','
                    << format_double(behavior.p(b, x, y)) << "\n";
    return out.str();
}

std::string seesaw_trace_to_csv(const SeesawResult& result, const OutputMeta& meta) {
    std::ostringstream out;
    out << meta_comment_lines(meta);
    out << "restart,round,value\n";
    for (const RestartTrace& trace : result.traces) {
        // two recorded half-steps per round; report the value closing each round
        for (std::size_t k = 1; k < trace.values.size(); k += 2)
            out << trace.restart << ',' << (k / 2) << ','
                << format_double(trace.values[k]) << "\n";
    }
    return out.str();
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write file: " + path.string());
    out << content;
}

} // namespace qsdc
