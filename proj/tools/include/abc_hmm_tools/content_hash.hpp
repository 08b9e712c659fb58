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

#ifndef ABC_HMM_TOOLS_CONTENT_HASH_HPP
#define ABC_HMM_TOOLS_CONTENT_HASH_HPP

#include <filesystem>
#include <string>
#include <string_view>

namespace abc_hmm::tools {

/// Git blob object id: hex SHA-1 of "blob <size>\0" followed by the content.
std::string git_blob_hash(std::string_view content);

/// git_blob_hash of a file's bytes.
std::string git_blob_hash_file(const std::filesystem::path& path);

}  // namespace abc_hmm::tools

#endif  // ABC_HMM_TOOLS_CONTENT_HASH_HPP
