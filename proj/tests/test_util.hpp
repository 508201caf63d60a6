// Copyright 2026 The GSC Authors.
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


#ifndef GSC_TESTS_TEST_UTIL_HPP
#define GSC_TESTS_TEST_UTIL_HPP

#include <doctest.h>

#include <filesystem>
#include <string>

#include "common/error.hpp"

namespace testutil {

inline std::filesystem::path Fixture(const std::string& rel) {
  return std::filesystem::path(GSC_FIXTURE_DIR) / rel;
}

// Error code thrown by `fn`; fails the test when nothing is thrown.
template <typename Fn>
gsc::ErrorCode CodeOf(Fn&& fn) {
  try {
    fn();
  } catch (const gsc::Error& e) {
    return e.code();
  }
  FAIL("expected gsc::Error");
  return gsc::ErrorCode::kInvalidArgument;
}

// Message of the gsc::Error thrown by `fn`.
template <typename Fn>
std::string MessageOf(Fn&& fn) {
  try {
    fn();
  } catch (const gsc::Error& e) {
    return e.what();
  }
  FAIL("expected gsc::Error");
  return "";
}

}  // namespace testutil

#endif  // GSC_TESTS_TEST_UTIL_HPP
