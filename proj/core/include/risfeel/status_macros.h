// Copyright 2026 The risfeel Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RISFEEL_STATUS_MACROS_H_
#define RISFEEL_STATUS_MACROS_H_

#include <utility>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

#define RISFEEL_CONCAT_INNER_(a, b) a##b
#define RISFEEL_CONCAT_(a, b) RISFEEL_CONCAT_INNER_(a, b)

#define RISFEEL_RETURN_IF_ERROR(expr)                  \
  do {                                                 \
    const ::absl::Status risfeel_status_ = (expr);     \
    if (!risfeel_status_.ok()) return risfeel_status_; \
  } while (false)

#define RISFEEL_ASSIGN_OR_RETURN_IMPL_(tmp, lhs, expr) \
  auto tmp = (expr);                                   \
  if (!tmp.ok()) return std::move(tmp).status();       \
  lhs = *std::move(tmp)

// Evaluates `expr` (a StatusOr) and either assigns its value to `lhs` or
// returns the error from the enclosing function.
#define RISFEEL_ASSIGN_OR_RETURN(lhs, expr)                                    \
  RISFEEL_ASSIGN_OR_RETURN_IMPL_(RISFEEL_CONCAT_(risfeel_statusor_, __LINE__), \
                                 lhs, expr)

#endif  // RISFEEL_STATUS_MACROS_H_
