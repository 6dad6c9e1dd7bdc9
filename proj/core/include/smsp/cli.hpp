// Copyright 2026 The Authors.
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

#ifndef SMSP_CLI_HPP_
#define SMSP_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace smsp {

// Entry point of the command-line driver. `args` excludes the program
// name. Returns the process exit status: 0 on success, 1 when a
// verification run reports a failure, 2 on usage or input errors.
// Output is deterministic: identical arguments produce identical bytes
// on `out` regardless of thread count.
int run_cli(std::vector<std::string> args, std::ostream& out,
            std::ostream& err);

}  // namespace smsp

#endif  // SMSP_CLI_HPP_
