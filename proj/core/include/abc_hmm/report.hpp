// Copyright 2026 The abc-hmm Authors
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

#ifndef ABC_HMM_REPORT_HPP
#define ABC_HMM_REPORT_HPP

#include <iosfwd>
#include <string>

#include "abc_hmm/estimate.hpp"
#include "abc_hmm/fisher.hpp"
#include "abc_hmm/smc_abc.hpp"

namespace abc_hmm {

/// Version of every CSV table written below; also recorded in the JSON documents.
inline constexpr int kResultCsvSchemaVersion = 1;

/// JSON documents. Non-finite numbers are written as the strings "inf", "-inf" and "nan".
std::string to_json(const LikelihoodEstimate& estimate);
std::string to_json(const EstimateResult& result);
std::string to_json(const FisherEstimate& estimate);
std::string to_json(const InformationLossCurve& curve);
std::string to_json(const MissingInformationReport& report);

/// Trace table: index, one column per parameter, objective, se.
void write_trace_csv(const EstimateResult& result, std::ostream& out);

/// Matrix table: row, col, value, se.
void write_fisher_csv(const FisherEstimate& estimate, std::ostream& out);

/// Curve table: epsilon, loss, se, min_eigenvalue, min_eigenvalue_se, perturbed_norm,
/// perturbed_norm_se. Slope metadata lives in the JSON document.
void write_loss_curve_csv(const InformationLossCurve& curve, std::ostream& out);

}  // namespace abc_hmm

#endif  // ABC_HMM_REPORT_HPP
