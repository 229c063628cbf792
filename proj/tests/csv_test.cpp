// Copyright 2026 The metricdeck Authors.
// SPDX-License-Identifier: Apache-2.0

#include "metricdeck/csv.hpp"

#include <gtest/gtest.h>

#include "metricdeck/error.hpp"

namespace metricdeck {
namespace {

TEST(Csv, SplitsPlainRecords) {
  auto rows = csv::read("a,b\n1,2\n");
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[1].fields, (std::vector<std::string>{"1", "2"}));
  EXPECT_EQ(rows[1].line, 2u);
}

TEST(Csv, HandlesQuotesCrlfAndBom) {
  auto rows = csv::read("\xEF\xBB\xBFname,note\r\n\"Smith, J\",\"say \"\"hi\"\"\"\r\n\r\nx,\"multi\nline\"\r\n");
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].fields[0], "name");
  EXPECT_EQ(rows[1].fields[0], "Smith, J");
  EXPECT_EQ(rows[1].fields[1], "say \"hi\"");
  EXPECT_EQ(rows[2].fields[1], "multi\nline");
  EXPECT_EQ(rows[2].line, 4u);
}

TEST(Csv, KeepsEmptyFields) {
  auto rows = csv::read("a,,c\n");
  EXPECT_EQ(rows[0].fields, (std::vector<std::string>{"a", "", "c"}));
}

TEST(Csv, UnterminatedQuoteIsMalformed) {
  try {
    csv::read("a\n\"oops\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMalformedInput);
  }
}

}  // namespace
}  // namespace metricdeck
