"""Regenerates the synthetic CSV fixtures under data/fixtures.

Both files mimic the layout of public datasets (column names, delimiters,
missing-value conventions) but every value is drawn from a seeded generator.
"""

import argparse
import pathlib

import numpy as np

HOUSING_COLUMNS = [
    "longitude", "latitude", "housing_median_age", "total_rooms", "total_bedrooms",
    "population", "households", "median_income", "median_house_value", "ocean_proximity",
]
PROXIMITY = ["<1H OCEAN", "INLAND", "NEAR OCEAN", "NEAR BAY", "ISLAND"]

AIR_COLUMNS = [
    "Date", "Time", "CO(GT)", "PT08.S1(CO)", "NMHC(GT)", "C6H6(GT)", "PT08.S2(NMHC)",
    "NOx(GT)", "PT08.S3(NOx)", "NO2(GT)", "PT08.S4(NO2)", "PT08.S5(O3)", "T", "RH", "AH",
]


def comma(x, digits):
    return f"{x:.{digits}f}".replace(".", ",")


def housing(rng, rows):
    lines = [",".join(HOUSING_COLUMNS)]
    for _ in range(rows):
        income = float(np.clip(rng.lognormal(1.28, 0.47), 0.4999, 15.0001))
        rooms = int(rng.integers(200, 8000))
        households = max(1, int(rooms / rng.uniform(3.5, 7.0)))
        bedrooms = "" if rng.random() < 0.01 else str(int(rooms * rng.uniform(0.15, 0.25)))
        value = float(np.clip(40000 + 42000 * income + rng.normal(0, 60000), 14999, 500001))
        lines.append(",".join([
            f"{rng.uniform(-124.3, -114.3):.2f}",
            f"{rng.uniform(32.5, 42.0):.2f}",
            str(int(rng.integers(1, 53))),
            str(rooms),
            bedrooms,
            str(int(households * rng.uniform(2.0, 4.0))),
            str(households),
            f"{income:.4f}",
            f"{value:.1f}",
            str(rng.choice(PROXIMITY, p=[0.44, 0.32, 0.13, 0.1, 0.01])),
        ]))
    return "\n".join(lines) + "\n"


def air_quality(rng, rows, blank_rows):
    lines = [";".join(AIR_COLUMNS) + ";;"]
    for i in range(rows):
        day, hour = divmod(i + 18, 24)
        date = f"{day % 28 + 1:02d}/03/2004"
        co = -200.0 if rng.random() < 0.05 else max(0.1, round(rng.lognormal(0.6, 0.55), 1))
        fields = [
            date,
            f"{hour:02d}.00.00",
            comma(co, 1) if co != -200.0 else "-200",
            str(int(rng.normal(1100, 200))),
            "-200" if rng.random() < 0.9 else str(int(rng.integers(50, 400))),
            comma(max(0.2, rng.lognormal(2.0, 0.6)), 1),
            str(int(rng.normal(940, 250))),
            "-200" if rng.random() < 0.05 else str(int(rng.lognormal(5.3, 0.6))),
            str(int(rng.normal(830, 250))),
            "-200" if rng.random() < 0.05 else str(int(rng.normal(113, 45))),
            str(int(rng.normal(1450, 340))),
            str(int(rng.normal(1020, 400))),
            comma(rng.normal(18.3, 8.7), 1),
            comma(float(np.clip(rng.normal(49, 17), 9, 88)), 1),
            comma(max(0.18, rng.normal(1.03, 0.4)), 4),
        ]
        lines.append(";".join(fields) + ";;")
    lines.extend([";" * (len(AIR_COLUMNS) + 1)] * blank_rows)
    return "\r\n".join(lines) + "\r\n"


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    root = pathlib.Path(__file__).resolve().parent.parent
    parser.add_argument("--out", type=pathlib.Path, default=root / "data" / "fixtures")
    parser.add_argument("--seed", type=int, default=20240311)
    args = parser.parse_args()
    rng = np.random.default_rng(args.seed)
    args.out.mkdir(parents=True, exist_ok=True)
    (args.out / "housing_sample.csv").write_text(housing(rng, 2000), newline="")
    (args.out / "air_quality_sample.csv").write_text(air_quality(rng, 720, 6), newline="")


if __name__ == "__main__":
    main()
