/* Copyright 2026 The skiptree Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef SKIPTREE_CLI_H_
#define SKIPTREE_CLI_H_

namespace skiptree {

inline constexpr const char* kToolVersion = "1.0.0";

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitInternalError = 2;

// Entry point for the `skiptree` binary. Subcommands: gen, eval-extract,
// score, stats, typecheck, index.
int run(int argc, char** argv);

}  // namespace skiptree

#endif  // SKIPTREE_CLI_H_
