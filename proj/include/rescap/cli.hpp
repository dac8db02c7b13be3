// SPDX-FileCopyrightText: Copyright (c) 2026 The rescap Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>

namespace rescap::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kIoFailure = 2,
  kParseFailure = 3,
  kValidationFailure = 4,
  kDisconnected = 5,
  kTooFewGroups = 6,
  kBudgetExhausted = 7,
  kOutputExists = 8,
  kStrategyFailed = 9,
};

/// Entry point behind the `rescap` executable. Data goes to files, tables to
/// `out`, progress and diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rescap::cli
