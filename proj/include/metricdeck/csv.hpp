// Copyright 2026 The metricdeck Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace metricdeck::csv {

struct Record {
  std::size_t line = 0;  // 1-based line of the record's first character
  std::vector<std::string> fields;
};

// RFC 4180 reader: quoted fields, doubled quotes, CRLF or LF, optional UTF-8
// BOM. Blank lines are skipped. Throws MalformedInput on an unterminated quote.
std::vector<Record> read(std::string_view text);

}  // namespace metricdeck::csv
