// Copyright 2026 The metricdeck Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <random>
#include <string>
#include <vector>

#include "metricdeck/document.hpp"

namespace gen {

using metricdeck::Date;
using metricdeck::TimeInterval;

inline Date random_date(std::mt19937_64& rng, Date lo = Date::from_ymd(2015, 1, 1),
                        Date hi = Date::from_ymd(2025, 12, 31)) {
  std::uniform_int_distribution<std::int32_t> d(lo.serial(), hi.serial());
  return Date::from_serial(d(rng));
}

inline TimeInterval random_interval(std::mt19937_64& rng, Date lo = Date::from_ymd(2015, 1, 1),
                                    Date hi = Date::from_ymd(2025, 12, 31)) {
  Date a = random_date(rng, lo, hi);
  Date b = random_date(rng, lo, hi);
  return a <= b ? TimeInterval(a, b) : TimeInterval(b, a);
}

inline std::string random_text(std::mt19937_64& rng) {
  static const std::vector<std::string> kWords = {
      "cases", "rose", "between Nov 2020 and Feb 2021", "sales", "dipped", "in", "late 2021",
      "\"quoted\"", "back\\slash", "tab\t", "line\nbreak", "caf\xc3\xa9", "\xe2\x80\x93", "2019"};
  std::uniform_int_distribution<std::size_t> n(0, 8), w(0, kWords.size() - 1);
  std::string out;
  for (std::size_t i = n(rng); i > 0; --i) {
    if (!out.empty()) out += ' ';
    out += kWords[w(rng)];
  }
  return out;
}

// Structurally valid canvas with unique ids; metric ids need not exist.
inline metricdeck::Canvas random_canvas(std::mt19937_64& rng) {
  using namespace metricdeck;
  std::uniform_int_distribution<int> small(0, 4), coin(0, 1), pick(0, 2);
  std::uniform_real_distribution<double> real(-1e6, 1e6);
  int next = 1;
  auto fresh = [&](const char* prefix) { return std::string(prefix) + "-" + std::to_string(next++); };

  Canvas c;
  c.id = fresh("canvas");
  c.title = random_text(rng);
  for (int i = small(rng); i > 0; --i) c.collection_ids.push_back(fresh("col"));
  c.recommendations_enabled = coin(rng) == 1;
  for (int s = small(rng); s > 0; --s) {
    Scene scene;
    scene.id = fresh("scene");
    for (int k = small(rng); k > 0; --k) {
      if (coin(rng) == 0) {
        VizCardSpec v;
        v.id = fresh("card");
        for (int m = small(rng); m > 0; --m) v.metric_ids.push_back(fresh("metric"));
        v.granularity = static_cast<Granularity>(pick(rng));
        if (coin(rng)) v.time_filter = random_interval(rng);
        if (coin(rng)) v.dim_filters["region"] = random_text(rng);
        v.axis.y_mode = static_cast<YMode>(pick(rng));
        v.axis.x_mode = coin(rng) ? XMode::kRelative : XMode::kAbsolute;
        if (coin(rng)) v.axis.coordinated_y_with = fresh("card");
        if (coin(rng)) v.axis.coordinated_x_with = fresh("card");
        for (int a = small(rng); a > 0; --a) {
          Annotation ann;
          ann.id = fresh("ann");
          ann.y_value = real(rng);
          if (coin(rng)) ann.metric_id = fresh("metric");
          if (coin(rng)) ann.anchor = random_date(rng);
          v.annotations.push_back(ann);
        }
        for (int o = small(rng); o > 0; --o) v.obfuscations.push_back(random_interval(rng));
        v.provenance = coin(rng) ? Provenance::kRecommended : Provenance::kManual;
        scene.cards.push_back(v);
      } else {
        TextCard t;
        t.id = fresh("card");
        for (int p = small(rng); p > 0; --p) {
          Paragraph para{fresh("para"), random_text(rng), std::nullopt};
          if (coin(rng)) {
            ParagraphLink link;
            link.paragraph_id = para.id;
            link.target_card_id = fresh("card");
            link.reference_date = random_date(rng);
            for (int m = small(rng); m > 0; --m) {
              TimeMention mention;
              mention.char_start = static_cast<std::size_t>(small(rng));
              mention.char_end = mention.char_start + 8;
              mention.interval = random_interval(rng);
              mention.surface = random_text(rng);
              link.mentions.push_back(mention);
            }
            para.link = link;
          }
          t.paragraphs.push_back(para);
        }
        scene.cards.push_back(t);
      }
    }
    c.scenes.push_back(scene);
  }
  c.version = std::uniform_int_distribution<std::int64_t>(0, 1000)(rng);
  c.next_id = next;
  return c;
}

}  // namespace gen
