// Copyright 2026 The hanpivot Authors
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

#include "hanpivot/subprocess.hpp"

#include <gtest/gtest.h>

using namespace hanpivot;

TEST(LineAdapter, IdentityCat) {
  AdapterSpec spec{"cat", 10.0};
  const std::vector<std::string> in = {"명령은 아래와 같이 반포되었다.", "two", ""};
  EXPECT_EQ(run_line_adapter(spec, in), in);
}

TEST(LineAdapter, EmptyInput) {
  AdapterSpec spec{"cat", 10.0};
  EXPECT_TRUE(run_line_adapter(spec, {}).empty());
}

TEST(LineAdapter, OrderPreserved) {
  AdapterSpec spec{"cat -", 10.0};
  std::vector<std::string> in;
  for (int i = 0; i < 100; ++i) in.push_back("line-" + std::to_string(i));
  EXPECT_EQ(run_line_adapter(spec, in), in);
}

TEST(LineAdapter, LargeBatchDoesNotDeadlock) {
  // Enough bytes to overflow a pipe buffer in both directions; the poll
  // loop must interleave writes and reads.
  AdapterSpec spec{"cat", 30.0};
  std::vector<std::string> in;
  const std::string payload(400, 'x');
  for (int i = 0; i < 5000; ++i) in.push_back(payload + std::to_string(i));
  EXPECT_EQ(run_line_adapter(spec, in), in);
}

TEST(LineAdapter, LineCountMismatch) {
  AdapterSpec spec{"head -n 1", 10.0};
  try {
    run_line_adapter(spec, {"a", "b", "c"});
    FAIL() << "expected AdapterLineCountMismatch";
  } catch (const AdapterError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::adapter_mismatch);
    EXPECT_NE(std::string(e.what()).find("3"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("1"), std::string::npos);
  }
}

TEST(LineAdapter, Timeout) {
  AdapterSpec spec{"sleep 30", 0.3};
  try {
    run_line_adapter(spec, {"a"});
    FAIL() << "expected AdapterTimeout";
  } catch (const AdapterError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::adapter_timeout);
  }
}

TEST(LineAdapter, NonzeroExit) {
  AdapterSpec spec{"exit 3", 10.0};
  try {
    run_line_adapter(spec, {});
    FAIL() << "expected AdapterNonzeroExit";
  } catch (const AdapterError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::adapter_exit);
    EXPECT_NE(std::string(e.what()).find("3"), std::string::npos);
  }
}

TEST(LineAdapter, MissingCommand) {
  AdapterSpec spec{"/definitely/not/here 2>/dev/null", 10.0};
  EXPECT_THROW(run_line_adapter(spec, {"a"}), AdapterError);
}
