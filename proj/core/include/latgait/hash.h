// Copyright 2026 The latgait Authors
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


// Content hashes used to chain pipeline artifacts.

#ifndef LATGAIT_HASH_H_
#define LATGAIT_HASH_H_

#include <cstdint>
#include <string>
#include <string_view>

namespace latgait {

// 64-bit FNV-1a.
std::uint64_t Fnv1a64(std::string_view data);

// Fnv1a64 as 16 lowercase hex digits.
std::string HashHex(std::string_view data);

// Hash of a file's bytes. Throws IoError when unreadable.
std::string HashFile(const std::string& path);

}  // namespace latgait

#endif  // LATGAIT_HASH_H_
