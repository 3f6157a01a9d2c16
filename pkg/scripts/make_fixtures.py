#!/usr/bin/env python3
"""Regenerate the bundled demo data under src/sentinel/data/.

Everything here is deterministic. The two sample datasets are synthetic,
schema-compatible stand-ins so the pipelines and CI can run without the
real exports (which users fetch themselves; see `sentinel fetch`).
District percentages are illustrative values whose statewide means match
the published 3.3 / 0.3 / 2.3 figures; facility and town coordinates are
approximate city-centre locations for demo purposes only.
"""

import csv
import sys
from pathlib import Path

import numpy as np

DATA_DIR = Path(__file__).resolve().parents[1] / "src" / "sentinel" / "data"

CERVICAL_COLUMNS = [
    "Age", "Number of sexual partners", "First sexual intercourse",
    "Num of pregnancies", "Smokes", "Smokes (years)", "Smokes (packs/year)",
    "Hormonal Contraceptives", "Hormonal Contraceptives (years)", "IUD",
    "IUD (years)", "STDs", "STDs (number)", "STDs:condylomatosis",
    "STDs:cervical condylomatosis", "STDs:vaginal condylomatosis",
    "STDs:vulvo-perineal condylomatosis", "STDs:syphilis",
    "STDs:pelvic inflammatory disease", "STDs:genital herpes",
    "STDs:molluscum contagiosum", "STDs:AIDS", "STDs:HIV", "STDs:Hepatitis B",
    "STDs:HPV", "STDs: Number of diagnosis", "STDs: Time since first diagnosis",
    "STDs: Time since last diagnosis", "Dx:Cancer", "Dx:CIN", "Dx:HPV", "Dx",
    "Hinselmann", "Schiller", "Citology", "Biopsy",
]

BCSC_COLUMNS = [
    "menopaus", "agegrp", "density", "race", "Hispanic", "bmi", "agefirst",
    "nrelbc", "brstproc", "lastmamm", "surgmeno", "hrt", "invasive", "cancer",
    "training", "count",
]

DISTRICTS = [
    ("Adilabad", 19.66, 78.53), ("Bhadradri Kothagudem", 17.55, 80.62),
    ("Hyderabad", 17.38, 78.49), ("Jagtial", 18.79, 78.91),
    ("Jangaon", 17.72, 79.15), ("Jayashankar Bhupalpally", 18.43, 79.86),
    ("Jogulamba Gadwal", 16.23, 77.80), ("Kamareddy", 18.32, 78.34),
    ("Karimnagar", 18.44, 79.13), ("Khammam", 17.25, 80.15),
    ("Kumuram Bheem Asifabad", 19.36, 79.28), ("Mahabubabad", 17.60, 80.00),
    ("Mahabubnagar", 16.74, 77.98), ("Mancherial", 18.87, 79.46),
    ("Medak", 18.03, 78.27), ("Medchal Malkajgiri", 17.63, 78.48),
    ("Mulugu", 18.19, 79.94), ("Nagarkurnool", 16.48, 78.32),
    ("Nalgonda", 17.05, 79.27), ("Narayanpet", 16.74, 77.49),
    ("Nirmal", 19.10, 78.34), ("Nizamabad", 18.67, 78.09),
    ("Peddapalli", 18.62, 79.37), ("Rajanna Sircilla", 18.39, 78.81),
    ("Rangareddy", 17.19, 78.18), ("Sangareddy", 17.62, 78.08),
    ("Siddipet", 18.10, 78.85), ("Suryapet", 17.14, 79.62),
    ("Vikarabad", 17.34, 77.90), ("Wanaparthy", 16.36, 78.06),
    ("Warangal Rural", 17.88, 79.62), ("Warangal Urban", 17.97, 79.59),
    ("Yadadri Bhuvanagiri", 17.51, 78.89),
]

FACILITIES = [
    ("mnj-rcc", "MNJ Institute of Oncology and Regional Cancer Centre",
     "cancer_centre", 17.392, 78.471, "Hyderabad"),
    ("biach", "Basavatarakam Indo American Cancer Hospital", "cancer_centre",
     17.423, 78.458, "Hyderabad"),
    ("nims-hyd", "Nizams Institute of Medical Sciences", "hospital",
     17.424, 78.453, "Hyderabad"),
    ("gandhi-sec", "Gandhi Hospital", "hospital", 17.448, 78.501, "Hyderabad"),
    ("osmania-hyd", "Osmania General Hospital", "hospital",
     17.372, 78.473, "Hyderabad"),
    ("mgm-wgl", "MGM Hospital Warangal", "hospital", 17.983, 79.598,
     "Warangal Urban"),
    ("ggh-nzb", "Government General Hospital Nizamabad", "hospital",
     18.673, 78.100, "Nizamabad"),
    ("rims-adb", "RIMS Adilabad", "hospital", 19.665, 78.532, "Adilabad"),
    ("dh-khm", "District Hospital Khammam", "hospital", 17.247, 80.143,
     "Khammam"),
    ("dh-knr", "District Hospital Karimnagar", "hospital", 18.434, 79.132,
     "Karimnagar"),
    ("dh-mbn", "District Hospital Mahabubnagar", "hospital", 16.748, 77.985,
     "Mahabubnagar"),
    ("dh-nlg", "District Hospital Nalgonda", "hospital", 17.057, 79.268,
     "Nalgonda"),
    ("dh-sdp", "District Hospital Siddipet", "hospital", 18.102, 78.852,
     "Siddipet"),
    ("dh-sgr", "District Hospital Sangareddy", "hospital", 17.625, 78.086,
     "Sangareddy"),
    ("dh-srp", "District Hospital Suryapet", "hospital", 17.140, 79.622,
     "Suryapet"),
    ("camp-mlg", "Mobile Screening Camp Mulugu", "screening_camp",
     18.190, 79.940, "Mulugu"),
    ("camp-gdw", "Mobile Screening Camp Gadwal", "screening_camp",
     16.233, 77.800, "Jogulamba Gadwal"),
    ("camp-asf", "Mobile Screening Camp Asifabad", "screening_camp",
     19.360, 79.280, "Kumuram Bheem Asifabad"),
]


def fmt(v):
    if isinstance(v, float) and v.is_integer():
        return str(int(v))
    return str(v)


def make_cervical(rng):
    rows = []
    for _ in range(250):
        age = int(rng.integers(15, 56))
        partners = int(rng.integers(1, 7))
        first = int(rng.integers(14, min(age, 26) + 1))
        pregnancies = int(rng.integers(0, 7))
        smokes = int(rng.random() < 0.18)
        smokes_years = round(float(rng.uniform(1, 20)), 1) if smokes else 0.0
        smokes_packs = round(smokes_years * float(rng.uniform(0.05, 0.3)), 2) if smokes else 0.0
        hc = int(rng.random() < 0.5)
        hc_years = round(float(rng.uniform(0.25, 12)), 2) if hc else 0.0
        iud = int(rng.random() < 0.1)
        iud_years = round(float(rng.uniform(0.25, 8)), 2) if iud else 0.0
        condy = int(rng.random() < 0.05)
        vaginal = int(rng.random() < 0.01)
        vulvo = int(rng.random() < 0.04)
        syphilis = int(rng.random() < 0.02)
        pelvic = int(rng.random() < 0.01)
        herpes = int(rng.random() < 0.01)
        molluscum = int(rng.random() < 0.01)
        hiv = int(rng.random() < 0.05)
        hepb = int(rng.random() < 0.01)
        std_hpv = int(rng.random() < 0.03)
        any_std = int(condy or vaginal or vulvo or syphilis or pelvic
                      or herpes or molluscum or hiv or hepb or std_hpv)
        std_number = (condy + vaginal + vulvo + syphilis + pelvic + herpes
                      + molluscum + hiv + hepb + std_hpv)
        diagnoses = int(rng.integers(1, 3)) if any_std and rng.random() < 0.4 else 0
        if diagnoses and rng.random() < 0.5:
            since_first = float(int(rng.integers(1, 15)))
            since_last = float(int(rng.integers(0, int(since_first) + 1)))
        else:
            since_first = None
            since_last = None
        dx_hpv = int(rng.random() < 0.05)
        dx_cin = int(rng.random() < 0.02)
        cancer = int(dx_hpv == 1 or (hiv == 1 and smokes == 1))
        dx = int(cancer or dx_cin or dx_hpv)
        hinselmann = int(rng.random() < 0.04)
        schiller = int(rng.random() < 0.06)
        citology = int(rng.random() < 0.05)
        biopsy = int(cancer or rng.random() < 0.04)
        rows.append([
            age, partners, first, pregnancies, smokes, smokes_years,
            smokes_packs, hc, hc_years, iud, iud_years, any_std, std_number,
            condy, 0, vaginal, vulvo, syphilis, pelvic, herpes, molluscum, 0,
            hiv, hepb, std_hpv, diagnoses, since_first, since_last, cancer,
            dx_cin, dx_hpv, dx, hinselmann, schiller, citology, biopsy,
        ])

    # Sprinkle missing answers over the lifestyle columns (skipped
    # questions), away from the label and the engineered flags.
    holey_cols = [1, 2, 3, 5, 6, 8, 10]
    for row in rows:
        if rng.random() < 0.06:
            row[int(rng.choice(holey_cols))] = None

    dup_idx = rng.choice(len(rows), size=8, replace=False)
    rows += [list(rows[i]) for i in dup_idx]
    return rows


def make_bcsc(rng):
    rows = []
    for _ in range(300):
        menopaus = int(rng.integers(0, 3))
        agegrp = int(rng.integers(1, 11))
        density = int(rng.integers(1, 5))
        race = int(rng.integers(1, 6))
        hispanic = int(rng.random() < 0.15)
        bmi = int(rng.integers(1, 5))
        agefirst = int(rng.integers(0, 3))
        nrelbc = int(rng.integers(0, 3))
        brstproc = int(rng.random() < 0.3)
        lastmamm = int(rng.random() < 0.5)
        surgmeno = int(rng.random() < 0.2)
        hrt = int(rng.random() < 0.25)
        invasive = int(rng.random() < 0.03)
        cancer = int(invasive or (density == 4 and nrelbc == 2 and bmi >= 3))
        training = int(rng.random() < 0.5)
        count = int(rng.integers(1, 1100))
        rows.append([menopaus, agegrp, density, race, hispanic, bmi, agefirst,
                     nrelbc, brstproc, lastmamm, surgmeno, hrt, invasive,
                     cancer, training, count])
    rows[0][15] = 1128  # mirror the documented column scale
    for row in rows:
        if rng.random() < 0.04:
            row[int(rng.choice([0, 2, 5, 9]))] = None
    rows += [list(rows[i]) for i in rng.choice(60, size=20, replace=True)]
    return rows


def one_decimal_values(rng, n, lo, hi, target_sum):
    """n one-decimal values in [lo, hi] whose sum is exactly target_sum."""
    scale = 10
    lo_i, hi_i, target_i = round(lo * scale), round(hi * scale), round(target_sum * scale)
    vals = rng.integers(lo_i, hi_i + 1, size=n)
    diff = target_i - int(vals.sum())
    step = 1 if diff > 0 else -1
    i = 0
    while diff != 0:
        j = i % n
        if lo_i <= vals[j] + step <= hi_i:
            vals[j] += step
            diff -= step
        i += 1
    return [v / scale for v in vals]


def write_csv(path, header, rows):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow(["?" if v is None else fmt(v) for v in row])
    print(f"wrote {path} ({len(rows)} rows)")


def main():
    (DATA_DIR / "samples").mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(7021)

    write_csv(DATA_DIR / "samples" / "cervical_synthetic.csv",
              CERVICAL_COLUMNS, make_cervical(rng))
    write_csv(DATA_DIR / "samples" / "bcsc_synthetic.csv",
              BCSC_COLUMNS, make_bcsc(rng))

    n = len(DISTRICTS)
    cerv = one_decimal_values(rng, n, 0.8, 7.0, 3.3 * n)
    breast = one_decimal_values(rng, n, 0.1, 0.9, 0.3 * n)
    oral = one_decimal_values(rng, n, 0.7, 4.5, 2.3 * n)
    rows = [
        [name, c, b, o, lat, lon]
        for (name, lat, lon), c, b, o in zip(DISTRICTS, cerv, breast, oral)
    ]
    write_csv(DATA_DIR / "district_stats_telangana.csv",
              ["district", "cervical_pct", "breast_pct", "oral_pct", "lat", "lon"],
              rows)

    write_csv(DATA_DIR / "facilities_telangana.csv",
              ["id", "name", "kind", "lat", "lon", "district"],
              [list(f) for f in FACILITIES])

    gaz = [[name, lat, lon, name] for name, lat, lon in DISTRICTS]
    gaz.append(["Warangal", 17.97, 79.59, "Warangal Urban"])
    gaz.append(["Secunderabad", 17.44, 78.50, "Hyderabad"])
    gaz.sort(key=lambda r: r[0])
    write_csv(DATA_DIR / "gazetteer_telangana.csv",
              ["name", "lat", "lon", "district"], gaz)


if __name__ == "__main__":
    sys.exit(main())
