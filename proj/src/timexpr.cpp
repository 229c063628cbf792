// Copyright 2026 The metricdeck Authors.
// SPDX-License-Identifier: Apache-2.0

#include "metricdeck/timexpr.hpp"

#include <array>
#include <optional>

#include "metricdeck/error.hpp"

namespace metricdeck {

namespace {

enum class TokenKind { kWord, kNumber, kDash, kPunct };

struct Token {
  TokenKind kind;
  std::size_t begin;
  std::size_t end;
  std::string lower;    // words only
  bool space_before;    // whitespace separates it from the previous token
};

bool is_alpha(unsigned char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_digit(unsigned char c) { return c >= '0' && c <= '9'; }
bool is_space(unsigned char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  bool space = true;
  while (i < text.size()) {
    const auto c = static_cast<unsigned char>(text[i]);
    if (is_space(c)) {
      space = true;
      ++i;
      continue;
    }
    std::size_t start = i;
    Token tok{TokenKind::kPunct, start, start + 1, {}, space};
    if (is_alpha(c)) {
      while (i < text.size() && is_alpha(static_cast<unsigned char>(text[i]))) {
        tok.lower.push_back(static_cast<char>(text[i] | 0x20));
        ++i;
      }
      tok.kind = TokenKind::kWord;
      tok.end = i;
    } else if (is_digit(c)) {
      while (i < text.size() && is_digit(static_cast<unsigned char>(text[i]))) ++i;
      tok.kind = TokenKind::kNumber;
      tok.end = i;
    } else if (c == '-') {
      tok.kind = TokenKind::kDash;
      i += 1;
    } else if (text.substr(i).starts_with("\xE2\x80\x93") ||
               text.substr(i).starts_with("\xE2\x80\x94")) {
      tok.kind = TokenKind::kDash;
      i += 3;
      tok.end = i;
    } else {
      i += 1;
    }
    out.push_back(std::move(tok));
    space = false;
  }
  return out;
}

constexpr std::array<std::string_view, 12> kMonthNames = {
    "january", "february", "march", "april", "may", "june",
    "july", "august", "september", "october", "november", "december"};

std::optional<unsigned> month_number(std::string_view word) {
  if (word == "sept") return 9;
  for (std::size_t m = 0; m < kMonthNames.size(); ++m) {
    if (word == kMonthNames[m] || word == kMonthNames[m].substr(0, 3)) {
      return static_cast<unsigned>(m + 1);
    }
  }
  return std::nullopt;
}

struct Match {
  TimeInterval interval;
  std::size_t last;  // index of the final token consumed
};

class Recognizer {
 public:
  Recognizer(std::string_view text, Date reference)
      : text_(text), reference_(reference), tokens_(tokenize(text)) {}

  std::vector<TimeMention> run() {
    std::vector<TimeMention> out;
    std::size_t i = 0;
    while (i < tokens_.size()) {
      if (starts_fresh(i)) {
        if (auto r = range(i)) {
          if (r->second) emit(out, i, r->first, *r->second);
          i = r->first + 1;
          continue;
        }
        if (auto d = date(i)) {
          emit(out, i, d->last, d->interval);
          i = d->last + 1;
          continue;
        }
      }
      ++i;
    }
    return out;
  }

 private:
  const Token* at(std::size_t i) const { return i < tokens_.size() ? &tokens_[i] : nullptr; }

  bool is_word(std::size_t i, std::string_view w) const {
    const Token* t = at(i);
    return t && t->kind == TokenKind::kWord && t->lower == w;
  }

  bool is_alnum(const Token* t) const {
    return t && (t->kind == TokenKind::kWord || t->kind == TokenKind::kNumber);
  }

  // Not glued to a preceding letter/digit run.
  bool starts_fresh(std::size_t i) const {
    if (i == 0) return true;
    return tokens_[i].space_before || !is_alnum(&tokens_[i - 1]);
  }

  // Not glued to a following letter/digit run.
  bool ends_clean(std::size_t i) const {
    const Token* next = at(i + 1);
    return !next || next->space_before || !is_alnum(next);
  }

  std::string_view digits(std::size_t i) const {
    return text_.substr(tokens_[i].begin, tokens_[i].end - tokens_[i].begin);
  }

  std::optional<int> number(std::size_t i, std::size_t width) const {
    const Token* t = at(i);
    if (!t || t->kind != TokenKind::kNumber || t->end - t->begin != width) return std::nullopt;
    int v = 0;
    for (char c : digits(i)) v = v * 10 + (c - '0');
    return v;
  }

  std::optional<int> year_at(std::size_t i) const {
    auto y = number(i, 4);
    if (!y || *y < 1900 || *y > 2099) return std::nullopt;
    return y;
  }

  bool glued_dash(std::size_t i) const {
    const Token* t = at(i);
    const Token* n = at(i + 1);
    return t && t->kind == TokenKind::kDash && !t->space_before && n && !n->space_before;
  }

  static TimeInterval months(int year, unsigned first, unsigned last) {
    return {Timestamp::of_month(year, first).first_day(), Timestamp::of_month(year, last).last_day()};
  }

  static TimeInterval whole_year(int year) {
    return {Date::from_ymd(year, 1, 1), Date::from_ymd(year, 12, 31)};
  }

  // A single date expression starting at token i.
  std::optional<Match> date(std::size_t i) const {
    const Token* t = at(i);
    if (!t) return std::nullopt;

    if (t->kind == TokenKind::kWord) {
      if (auto m = month_number(t->lower)) {
        std::size_t j = i + 1;
        if (const Token* p = at(j); p && p->kind == TokenKind::kPunct && text_[p->begin] == '.' &&
                                    !p->space_before && t->lower.size() <= 4) {
          ++j;
        }
        if (const Token* p = at(j); p && p->kind == TokenKind::kPunct && text_[p->begin] == ',') ++j;
        if (at(j) && at(j)->space_before && ends_clean_word(i)) {
          if (auto y = year_at(j); y && ends_clean(j)) return Match{months(*y, *m, *m), j};
        }
        return std::nullopt;
      }
      if (t->lower == "early" || t->lower == "mid" || t->lower == "late") {
        std::size_t j = i + 1;
        if (const Token* d = at(j); d && d->kind == TokenKind::kDash) ++j;
        else if (!at(j) || !at(j)->space_before) return std::nullopt;
        auto y = year_at(j);
        if (!y || !ends_clean(j)) return std::nullopt;
        unsigned first = t->lower == "early" ? 1 : t->lower == "mid" ? 5 : 9;
        return Match{months(*y, first, first + 3), j};
      }
      if (t->lower == "q") {
        auto q = number(i + 1, 1);
        if (!q || *q < 1 || *q > 4 || at(i + 1)->space_before) return std::nullopt;
        std::size_t j = i + 2;
        if (const Token* d = at(j); d && d->kind == TokenKind::kDash) ++j;
        else if (!at(j) || !at(j)->space_before) return std::nullopt;
        auto y = year_at(j);
        if (!y || !ends_clean(j)) return std::nullopt;
        unsigned first = static_cast<unsigned>(*q - 1) * 3 + 1;
        return Match{months(*y, first, first + 2), j};
      }
      if ((t->lower == "last" || t->lower == "this") && at(i + 1) && at(i + 1)->space_before) {
        if (is_word(i + 1, "year")) {
          int y = reference_.year() - (t->lower == "last" ? 1 : 0);
          return Match{whole_year(y), i + 1};
        }
        if (is_word(i + 1, "month") && t->lower == "last") {
          Timestamp m = Timestamp::containing(reference_, Granularity::kMonth).advanced(-1);
          return Match{m.interval(), i + 1};
        }
      }
      return std::nullopt;
    }

    if (t->kind == TokenKind::kNumber) {
      auto y = year_at(i);
      if (!y) return std::nullopt;
      // ISO YYYY-MM or YYYY-MM-DD.
      if (glued_dash(i + 1)) {
        if (auto m = number(i + 2, 2); m && *m >= 1 && *m <= 12) {
          if (glued_dash(i + 3)) {
            if (auto d = number(i + 4, 2); d && ends_clean(i + 4)) {
              if (auto date = Date::try_from_ymd(*y, static_cast<unsigned>(*m),
                                                 static_cast<unsigned>(*d))) {
                return Match{TimeInterval(*date, *date), i + 4};
              }
            }
          }
          if (ends_clean(i + 2)) return Match{months(*y, static_cast<unsigned>(*m), static_cast<unsigned>(*m)), i + 2};
        }
      }
      if (!ends_clean(i)) return std::nullopt;
      return Match{whole_year(*y), i};
    }
    return std::nullopt;
  }

  bool ends_clean_word(std::size_t i) const {
    const Token* next = at(i + 1);
    return !next || next->space_before || next->kind != TokenKind::kNumber;
  }

  // Returns the last consumed token and, when the bounds are ordered, the
  // normalized interval.
  std::optional<std::pair<std::size_t, std::optional<TimeInterval>>> range(std::size_t i) const {
    auto finish = [](const Match& a, const Match& b)
        -> std::pair<std::size_t, std::optional<TimeInterval>> {
      if (b.interval.end() < a.interval.start()) return {b.last, std::nullopt};
      return {b.last, TimeInterval(a.interval.start(), b.interval.end())};
    };
    if (is_word(i, "between") || is_word(i, "from")) {
      bool between = is_word(i, "between");
      if (at(i + 1) && at(i + 1)->space_before) {
        if (auto a = date(i + 1)) {
          std::size_t k = a->last + 1;
          bool joiner = between ? is_word(k, "and") : (is_word(k, "to") || is_word(k, "until"));
          if (joiner && at(k + 1) && at(k + 1)->space_before) {
            if (auto b = date(k + 1)) return finish(*a, *b);
          }
        }
      }
      return std::nullopt;
    }
    if (auto a = date(i)) {
      std::size_t k = a->last + 1;
      if (const Token* d = at(k); d && d->kind == TokenKind::kDash) {
        if (auto b = date(k + 1)) return finish(*a, *b);
      }
    }
    return std::nullopt;
  }

  void emit(std::vector<TimeMention>& out, std::size_t first, std::size_t last,
            const TimeInterval& interval) const {
    TimeMention m;
    m.char_start = tokens_[first].begin;
    m.char_end = tokens_[last].end;
    m.interval = interval;
    m.surface = std::string(text_.substr(m.char_start, m.char_end - m.char_start));
    out.push_back(std::move(m));
  }

  std::string_view text_;
  Date reference_;
  std::vector<Token> tokens_;
};

}  // namespace

std::vector<TimeMention> parse_time_expressions(std::string_view text, Date reference_date) {
  return Recognizer(text, reference_date).run();
}

ParagraphLink link_paragraph(std::string paragraph_id, std::string_view text,
                             std::string card_id, const TimeInterval& card_domain,
                             Date reference_date) {
  ParagraphLink link;
  link.paragraph_id = std::move(paragraph_id);
  link.target_card_id = std::move(card_id);
  link.reference_date = reference_date;
  for (auto& m : parse_time_expressions(text, reference_date)) {
    if (m.interval.intersects(card_domain)) link.mentions.push_back(std::move(m));
  }
  return link;
}

TimeInterval highlight_span(const ParagraphLink& link, std::size_t mention_index,
                            const TimeInterval& card_domain) {
  if (mention_index >= link.mentions.size()) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "mention " + std::to_string(mention_index) + " of " +
                    std::to_string(link.mentions.size()));
  }
  auto clipped = link.mentions[mention_index].interval.intersect(card_domain);
  if (!clipped) {
    throw Error(ErrorCode::kEmptyIntersection, "mention no longer intersects the card domain");
  }
  return *clipped;
}

}  // namespace metricdeck
