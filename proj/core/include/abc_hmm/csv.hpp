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

#ifndef ABC_HMM_CSV_HPP
#define ABC_HMM_CSV_HPP

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace abc_hmm {

/// Formats a double with 17 significant digits so that parsing it back is bit-exact.
/// Non-finite values are written as "inf", "-inf" and "nan".
std::string format_double(double value);

/// Parses a number written by format_double. Throws DomainError on malformed input.
double parse_double(std::string_view text);

/// Quotes a field if it contains a comma, quote or line break.
std::string csv_escape(std::string_view field);

/// Writes one CRLF-terminated record.
void write_csv_row(std::ostream& out, const std::vector<std::string>& fields);

/// Reads one record, honouring quoted fields. Returns false at end of input.
bool read_csv_row(std::istream& in, std::vector<std::string>& fields);

}  // namespace abc_hmm

#endif  // ABC_HMM_CSV_HPP
