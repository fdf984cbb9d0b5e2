// Copyright 2026 The rwrs Authors.
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

#include "rwrs/seeding.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>

namespace rwrs {

unsigned worker_count() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("RWRS_THREADS"); env != nullptr) {
    try {
      long requested = std::stol(env);
      if (requested > 0) return std::min(hw, static_cast<unsigned>(requested));
    } catch (const std::exception&) {
      // unparsable value: fall through to the hardware default
    }
  }
  return hw;
}

}  // namespace rwrs
