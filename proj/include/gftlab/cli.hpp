// Copyright 2026 The gft-lab Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>

namespace gftlab {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitCheckFailed = 2;

/// Entry point of the gft-lab tool. Results go to `out` as JSON (or CSV with
/// --csv), diagnostics to `err`. Returns 0 on success, 1 on invalid input or
/// I/O failure, 2 when a check or per-draw implication fails.
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gftlab
