#!/usr/bin/env python3
# Copyright 2026 The metricdeck Authors.
# SPDX-License-Identifier: Apache-2.0
"""Writes the Seattle COVID-19 and housing fixture collections.

Output is deterministic: rerunning produces byte-identical files.
"""

import argparse
import datetime as dt
import json
import math
import pathlib
import random


def bump(t, centre, width, height):
    return height * math.exp(-0.5 * ((t - centre) / width) ** 2)


def covid_rows(rng):
    start = dt.date(2020, 1, 1)
    end = dt.date(2022, 4, 30)
    positives_start = dt.date(2020, 2, 1)
    hospital_start = dt.date(2020, 3, 1)
    thanksgiving = (dt.date(2020, 12, 1) - start).days
    new_year = (dt.date(2022, 1, 8) - start).days
    days = (end - start).days + 1

    positives = []
    for t in range(days):
        base = 40 + bump(t, 90, 25, 120) + bump(t, 560, 40, 250)
        wave = bump(t, thanksgiving, 14, 900) + bump(t, new_year, 12, 7400)
        noise = rng.gauss(0, 0.04 * (base + wave))
        positives.append(max(0, round(base + wave + noise)))

    rows = []
    for t in range(days):
        day = start + dt.timedelta(days=t)
        tested = round(positives[t] * 9.5 + 1600 + rng.gauss(0, 120))
        lagged = positives[max(0, t - 9)]
        hospitalized = round(0.06 * lagged + 25 + rng.gauss(0, 3))
        rows.append({
            "date": day.isoformat(),
            "positives": positives[t] if day >= positives_start else None,
            "people_tested": max(0, tested),
            "hospitalized": max(0, hospitalized) if day >= hospital_start else None,
        })
    return rows


def housing_rows(rng):
    rows = []
    t = 0
    for year in range(2018, 2023):
        for month in range(1, 13):
            if (year, month) > (2022, 4):
                break
            seasonal = 1.0 + 0.18 * math.sin((month - 3) / 12 * 2 * math.pi)
            if month in (11, 12):
                seasonal *= 0.72
            level = 900 + bump(t, 17, 4, 260)          # mid-2019 high
            if (year, month) >= (2021, 10):
                level *= 0.82                          # late-2021 drop
            sold = round(level * seasonal + rng.gauss(0, 15))
            listings = round(sold * 1.22 + rng.gauss(0, 25))
            price = round(700000 + 5200 * t + rng.gauss(0, 6000), -2)
            inventory = round(2400 - 18 * t + 300 * math.cos(month / 12 * 2 * math.pi)
                              + rng.gauss(0, 40))
            rows.append({
                "month": f"{year:04d}-{month:02d}",
                "region": "Seattle",
                "homes_sold": sold,
                "new_listings": listings,
                "median_sale_price": price,
                "inventory": inventory,
            })
            t += 1
    return rows


COVID_MANIFEST = {
    "id": "covid",
    "name": "Seattle COVID-19",
    "granularity": "Day",
    "temporalAttribute": "date",
    "dimensions": [],
    "metrics": [
        {"column": "positives", "id": "positives", "name": "Positives",
         "unit": "people", "aggregation": "Sum"},
        {"column": "people_tested", "id": "people_tested", "name": "People Tested",
         "unit": "people", "aggregation": "Sum"},
        {"column": "hospitalized", "id": "hospitalized", "name": "Hospitalized",
         "unit": "people", "aggregation": "Last"},
    ],
}

HOUSING_MANIFEST = {
    "id": "housing",
    "name": "Seattle Housing",
    "granularity": "Month",
    "temporalAttribute": "month",
    "dimensions": ["region"],
    "metrics": [
        {"column": "homes_sold", "id": "homes_sold", "name": "Homes Sold",
         "unit": "homes", "aggregation": "Sum"},
        {"column": "new_listings", "id": "new_listings", "name": "New Listings",
         "unit": "homes", "aggregation": "Sum"},
        {"column": "median_sale_price", "id": "median_sale_price", "name": "Median Sale Price",
         "unit": "USD", "aggregation": "Mean"},
        {"column": "inventory", "id": "inventory", "name": "Inventory",
         "unit": "homes", "aggregation": "Last"},
    ],
}


def write_csv(path, rows, columns):
    with open(path, "w", newline="\n") as out:
        out.write(",".join(columns) + "\n")
        for row in rows:
            out.write(",".join("" if row[c] is None else str(row[c]) for c in columns) + "\n")


def write_json(path, value):
    with open(path, "w") as out:
        json.dump(value, out, indent=2, sort_keys=True)
        out.write("\n")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default=pathlib.Path(__file__).resolve().parent.parent / "fixtures",
                        type=pathlib.Path)
    args = parser.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    covid = covid_rows(random.Random(2020))
    write_csv(args.out / "covid.csv", covid, ["date", "positives", "people_tested", "hospitalized"])
    write_json(args.out / "covid.manifest.json", COVID_MANIFEST)

    housing = housing_rows(random.Random(2018))
    write_csv(args.out / "housing.csv", housing,
              ["month", "region", "homes_sold", "new_listings", "median_sale_price", "inventory"])
    write_json(args.out / "housing.manifest.json", HOUSING_MANIFEST)


if __name__ == "__main__":
    main()
