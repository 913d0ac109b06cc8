// Copyright 2026 the egn-bounds authors
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

#include <catch2/catch_amalgamated.hpp>

#include <string>

// Path to the egn-bounds executable; the [cli] tests skip when unset.
std::string g_cli_path;

int main(int argc, char* argv[]) {
  Catch::Session session;
  auto cli = session.cli() |
             Catch::Clara::Opt(g_cli_path, "path")["--cli-path"](
                 "path to the egn-bounds executable (enables [cli] tests)");
  session.cli(cli);
  const int rc = session.applyCommandLine(argc, argv);
  if (rc != 0) return rc;
  return session.run();
}
