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

#ifndef QSDC_SERIALIZE_HPP
#define QSDC_SERIALIZE_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "qsdc/protocol.hpp"
#include "qsdc/seesaw.hpp"
#include "qsdc/states.hpp"
#include "qsdc/witness.hpp"

namespace qsdc {

/// Provenance block embedded into every emitted file, so identical inputs
/// reproduce identical outputs and results can be audited.
struct OutputMeta {
    std::string tool = kToolName;
    std::string version = kToolVersion;
    std::uint64_t seed = 0;
    std::string input_hash;
    NumericPolicy policy;
};

std::uint64_t fnv1a64(const void* data, std::size_t size);
std::string hash_hex(std::uint64_t h);          // "fnv1a64:<16 hex digits>"
std::string hash_of_string(const std::string& s);

/// Round to 12 significant digits; all floats in emitted files go through
/// this so outputs are diff-able.
double round_sig(double x);
std::string format_double(double x);            // %.12g, C locale

std::string density_to_json(const DensityOperator& rho);
DensityOperator density_from_json(const std::string& text, const NumericPolicy& policy = {});

/// A preparation family plus the measurement settings that act on it.
struct ProtocolDocument {
    PreparationFamily family;
    std::vector<Povm> povms;
};

std::string protocol_to_json(const ProtocolDocument& doc, const OutputMeta* meta = nullptr);
ProtocolDocument protocol_from_json(const std::string& text,
                                    const NumericPolicy& policy = {});

/// CSV with columns b,x,y,p in lexicographic (x, y, b) row order, preceded
/// by '#'-prefixed metadata lines and a mandatory header row.
std::string behavior_to_csv(const Behavior& behavior, const OutputMeta& meta);

/// Content hashes of the certification inputs, for the audit trail.
std::string hash_of_family(const PreparationFamily& family);
std::string hash_of_povm(const Povm& povm);

/// All verdict fields plus the hashes of the certified protocol.
std::string verdict_to_json(const CertificationVerdict& verdict,
                            const std::string& family_hash, const std::string& povm_hash);

/// CSV with columns restart,round,value (one row per completed half-round
/// pair, i.e. per round).
std::string seesaw_trace_to_csv(const SeesawResult& result, const OutputMeta& meta);

std::string meta_comment_lines(const OutputMeta& meta);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& content);

} // namespace qsdc

#endif // QSDC_SERIALIZE_HPP
