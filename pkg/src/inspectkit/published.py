"""Published reference-table values, kept verbatim (as printed strings).

These are the yardstick for :mod:`inspectkit.tables`: recomputed cells are
rounded to each printed cell's precision and diffed against these constants.
Known transcription defects in the source tables (a duplicated row, swapped
experience entries) are deliberately preserved here so the diff can surface
them as errata instead of silently correcting them.
"""

from __future__ import annotations

from .dataset import Phase, SizeCategory

PROJECT_IDS = tuple(f"P{i}" for i in range(1, 16))

# Percentage-breakdown tables, one per phase. Row keys are what each row
# measures; values are the 15 printed cells in project order.
PHASE_PCT_ROWS = (
    "inspection_time_pct",
    "testing_time_pct",
    "prep_time_pct",
    "ni_pct",
    "nt_pct",
    "blocker_pct",
    "critical_pct",
    "major_pct",
    "minor_pct",
    "trivial_pct",
)

PHASE_PCT_TITLES = {
    "inspection_time_pct": "Inspection time %",
    "testing_time_pct": "Testing time %",
    "prep_time_pct": "Preparation time %",
    "ni_pct": "Inspection-caught %",
    "nt_pct": "Testing-caught %",
    "blocker_pct": "Blocker %",
    "critical_pct": "Critical %",
    "major_pct": "Major %",
    "minor_pct": "Minor %",
    "trivial_pct": "Trivial %",
}

TABLE_2 = {
    "inspection_time_pct": ("12.00", "13.04", "12.50", "10.91", "8.33", "9.59", "6.00", "10.08", "9.77", "6.45", "10.82", "10.06", "10.04", "9.46", "9.80"),
    "testing_time_pct": ("28.00", "30.43", "28.13", "29.09", "22.22", "27.40", "10.00", "30.13", "28.09", "26.88", "23.91", "20.12", "35.09", "20.21", "32.18"),
    "prep_time_pct": ("2.00", "0.65", "1.56", "1.82", "1.39", "2.74", "0.88", "1.41", "0.78", "0.54", "1.62", "1.79", "2.95", "1.62", "1.65"),
    "ni_pct": ("53.33", "48.57", "67.39", "51.95", "32.76", "48.28", "49.64", "45.71", "38.50", "26.67", "44.09", "43.75", "48.75", "44.44", "46.67"),
    "nt_pct": ("46.67", "51.43", "32.61", "48.05", "67.24", "51.72", "50.36", "54.29", "61.50", "73.33", "55.91", "56.25", "51.25", "55.56", "53.33"),
    "blocker_pct": ("10.00", "11.43", "10.87", "10.39", "3.45", "5.17", "10.79", "8.57", "9.50", "6.67", "9.84", "7.00", "9.38", "6.67", "10.67"),
    "critical_pct": ("13.33", "11.43", "13.04", "11.69", "3.45", "5.17", "10.07", "14.86", "12.50", "16.67", "11.81", "10.00", "11.56", "14.44", "11.20"),
    "major_pct": ("20.00", "20.00", "19.57", "19.48", "20.69", "25.86", "21.58", "17.14", "11.50", "13.33", "20.08", "18.00", "13.13", "14.22", "18.93"),
    "minor_pct": ("23.33", "25.71", "26.09", "22.08", "24.14", "20.69", "24.46", "20.00", "27.50", "26.00", "18.90", "23.00", "17.50", "28.00", "20.00"),
    "trivial_pct": ("33.33", "31.43", "30.43", "36.36", "48.28", "43.10", "33.09", "39.43", "39.00", "37.33", "39.37", "42.00", "48.44", "36.67", "39.20"),
}

# The design-phase table's inspection-caught row is a verbatim copy of the
# implementation-phase row in the source; left as printed.
TABLE_3 = {
    "inspection_time_pct": ("13.04", "10.00", "10.87", "10.00", "14.55", "11.98", "12.00", "10.13", "9.67", "9.58", "10.17", "7.80", "10.17", "8.37", "11.20"),
    "testing_time_pct": ("28.26", "32.50", "21.74", "22.73", "27.27", "22.75", "28.00", "27.64", "20.79", "26.35", "20.14", "19.50", "21.69", "16.74", "22.73"),
    "prep_time_pct": ("2.17", "1.25", "2.17", "0.91", "1.82", "1.20", "1.75", "1.77", "1.89", "1.20", "1.68", "1.77", "2.07", "2.01", "3.99"),
    "ni_pct": ("50.00", "57.14", "43.75", "52.94", "36.84", "21.05", "38.89", "51.06", "50.94", "40.00", "55.22", "50.00", "45.71", "46.67", "48.98"),
    "nt_pct": ("50.00", "62.50", "53.85", "46.15", "57.89", "50.00", "56.36", "51.43", "56.00", "60.00", "35.83", "54.29", "42.67", "55.00", "57.14"),
    "blocker_pct": ("10.00", "12.50", "7.69", "7.69", "7.89", "5.26", "10.91", "10.00", "9.33", "7.14", "10.00", "1.71", "10.00", "1.00", "8.79"),
    "critical_pct": ("10.00", "12.50", "7.69", "23.08", "15.79", "13.16", "12.73", "17.14", "20.00", "7.14", "15.00", "4.57", "16.00", "5.00", "17.58"),
    "major_pct": ("20.00", "25.00", "15.38", "19.23", "7.89", "26.32", "21.82", "21.43", "20.00", "18.57", "20.83", "25.71", "24.00", "15.00", "24.18"),
    "minor_pct": ("20.00", "25.00", "23.08", "19.23", "26.32", "23.68", "20.00", "24.29", "21.33", "27.14", "24.17", "20.00", "20.67", "37.50", "23.08"),
    "trivial_pct": ("40.00", "25.00", "46.15", "30.77", "42.11", "31.58", "34.55", "27.14", "29.33", "40.00", "30.00", "48.00", "29.33", "41.50", "26.37"),
}

TABLE_4 = {
    "inspection_time_pct": ("9.90", "10.00", "14.41", "13.94", "8.98", "9.21", "14.84", "11.96", "12.04", "10.53", "12.00", "10.94", "12.13", "11.72", "12.00"),
    "testing_time_pct": ("29.70", "35.00", "28.81", "27.27", "40.72", "21.27", "31.25", "30.18", "21.83", "31.58", "23.85", "21.88", "24.58", "18.74", "20.91"),
    "prep_time_pct": ("0.99", "1.50", "1.69", "1.21", "1.20", "0.44", "2.34", "1.59", "2.12", "1.97", "2.46", "2.19", "4.71", "1.87", "6.41"),
    "ni_pct": ("50.00", "57.14", "43.75", "52.94", "36.84", "21.05", "38.89", "51.06", "50.94", "40.00", "55.22", "50.00", "45.71", "46.67", "48.98"),
    "nt_pct": ("50.00", "42.86", "56.25", "47.06", "63.16", "78.95", "61.11", "48.94", "49.06", "60.00", "44.78", "50.00", "54.29", "53.33", "51.02"),
    "blocker_pct": ("12.50", "14.29", "12.50", "5.88", "0.00", "0.00", "8.33", "10.64", "7.55", "13.33", "7.46", "1.67", "10.00", "2.00", "10.20"),
    "critical_pct": ("25.00", "14.29", "18.75", "23.53", "21.05", "0.00", "11.11", "12.77", "7.55", "6.67", "20.90", "0.83", "18.57", "3.33", "21.43"),
    "major_pct": ("25.00", "21.43", "12.50", "23.53", "21.05", "31.58", "25.00", "23.40", "28.30", "20.00", "19.40", "15.83", "17.14", "14.67", "22.45"),
    "minor_pct": ("12.50", "14.29", "25.00", "17.65", "15.79", "28.95", "22.22", "25.53", "22.64", "33.33", "23.88", "20.00", "20.00", "26.00", "22.45"),
    "trivial_pct": ("25.00", "35.71", "31.25", "29.41", "42.11", "39.47", "33.33", "27.66", "33.96", "26.67", "28.36", "61.67", "34.29", "54.00", "23.47"),
}

PHASE_PCT_TABLES = {2: (Phase.REQUIREMENTS, TABLE_2), 3: (Phase.DESIGN, TABLE_3), 4: (Phase.IMPLEMENTATION, TABLE_4)}

# Defect-pattern ranges per (phase, severity): published integer-percent
# spans per size category, plus the printed cross-size "average" span.
TABLE_5: dict[tuple[Phase, str], dict[str, tuple[int, int]]] = {
    (Phase.REQUIREMENTS, "blocker"): {"small": (0, 10), "medium": (0, 10), "large": (0, 10), "average": (5, 10)},
    (Phase.REQUIREMENTS, "critical"): {"small": (0, 15), "medium": (0, 15), "large": (0, 15), "average": (10, 15)},
    (Phase.REQUIREMENTS, "major"): {"small": (10, 20), "medium": (20, 30), "large": (10, 20), "average": (10, 20)},
    (Phase.REQUIREMENTS, "minor"): {"small": (20, 25), "medium": (20, 30), "large": (15, 30), "average": (20, 25)},
    (Phase.REQUIREMENTS, "trivial"): {"small": (30, 50), "medium": (30, 45), "large": (30, 50), "average": (30, 40)},
    (Phase.DESIGN, "blocker"): {"small": (0, 15), "medium": (0, 10), "large": (0, 10), "average": (0, 10)},
    (Phase.DESIGN, "critical"): {"small": (5, 15), "medium": (5, 15), "large": (5, 20), "average": (5, 17)},
    (Phase.DESIGN, "major"): {"small": (5, 25), "medium": (15, 25), "large": (15, 25), "average": (10, 20)},
    (Phase.DESIGN, "minor"): {"small": (15, 25), "medium": (20, 30), "large": (20, 30), "average": (15, 25)},
    (Phase.DESIGN, "trivial"): {"small": (25, 45), "medium": (25, 45), "large": (25, 50), "average": (25, 40)},
    (Phase.IMPLEMENTATION, "blocker"): {"small": (0, 10), "medium": (0, 10), "large": (0, 10), "average": (0, 10)},
    (Phase.IMPLEMENTATION, "critical"): {"small": (10, 25), "medium": (0, 15), "large": (0, 15), "average": (0, 20)},
    (Phase.IMPLEMENTATION, "major"): {"small": (10, 25), "medium": (20, 35), "large": (10, 25), "average": (10, 25)},
    (Phase.IMPLEMENTATION, "minor"): {"small": (10, 25), "medium": (20, 35), "large": (20, 35), "average": (10, 25)},
    (Phase.IMPLEMENTATION, "trivial"): {"small": (25, 45), "medium": (25, 45), "large": (25, 55), "average": (25, 40)},
}

TABLE_6 = {
    "project_hours": ("250", "263", "300", "507", "869", "1806", "2110", "4248", "4586", "4644", "6944", "7087", "7416", "8940", "9220"),
    "di_req": ("0.53", "0.49", "0.67", "0.52", "0.33", "0.48", "0.50", "0.46", "0.39", "0.27", "0.44", "0.44", "0.49", "0.44", "0.47"),
    "di_des": ("0.50", "0.38", "0.46", "0.54", "0.42", "0.50", "0.44", "0.49", "0.44", "0.40", "0.64", "0.46", "0.57", "0.45", "0.43"),
    "di_imp": ("0.50", "0.57", "0.44", "0.53", "0.37", "0.21", "0.39", "0.51", "0.51", "0.40", "0.55", "0.50", "0.46", "0.47", "0.49"),
    "td": ("50", "60", "82", "125", "128", "154", "250", "306", "340", "266", "455", "720", "580", "835", "710"),
    "tc": ("48", "57", "75", "120", "115", "134", "230", "292", "328", "235", "441", "695", "540", "800", "655"),
    "tc_pct": ("96.00", "95.00", "91.46", "96.00", "89.84", "87.01", "92.00", "95.42", "96.47", "88.35", "96.92", "96.53", "93.10", "95.81", "92.25"),
}

# Mixed printed precision here (e.g. "1.8" vs "1.52") is intentional; the
# experience rows for req/imp carry the source's swapped P9/P10 entries.
TABLE_7 = {
    "req": {
        "di": ("0.53", "0.49", "0.67", "0.52", "0.33", "0.48", "0.5", "0.46", "0.39", "0.27", "0.44", "0.44", "0.49", "0.44", "0.47"),
        "ipm": ("1.52", "1.8", "2.3", "1.9", "0.9", "1.04", "0.31", "0.13", "0.12", "0.34", "0.05", "0.17", "0.17", "0.18", "0.12"),
        "experience_years": ("1", "1", "1", "2", "5", "5", "3", "5", "5", "2", "7", "6", "3", "6", "3"),
    },
    "des": {
        "di": ("0.5", "0.38", "0.46", "0.54", "0.42", "0.5", "0.44", "0.49", "0.44", "0.4", "0.64", "0.46", "0.57", "0.45", "0.43"),
        "ipm": ("0.24", "0.22", "0.25", "0.29", "0.3", "0.29", "0.09", "0.07", "0.05", "0.52", "0.08", "0.07", "0.08", "0.07", "0.03"),
        "experience_years": ("2", "2", "2", "3", "5", "5", "4", "6", "6", "6", "6", "6", "4", "6", "4"),
    },
    "imp": {
        "di": ("0.5", "0.57", "0.44", "0.53", "0.37", "0.21", "0.39", "0.51", "0.51", "0.4", "0.55", "0.5", "0.46", "0.47", "0.49"),
        "ipm": ("0.12", "0.23", "0.12", "0.12", "0.14", "0.06", "0.03", "0.04", "0.05", "0.11", "0.07", "0.13", "0.03", "0.06", "0.03"),
        "experience_years": ("2", "2", "2", "3", "5", "5", "5", "6", "5", "6", "7", "6", "4", "6", "5"),
    },
    "totals": {
        "td": ("50", "60", "82", "125", "128", "154", "250", "306", "340", "266", "455", "720", "580", "835", "710"),
        "tc": ("48", "57", "75", "120", "115", "134", "230", "292", "328", "235", "441", "695", "540", "800", "655"),
        "tc_pct": ("96", "95", "91.46", "96", "89.84", "87.01", "92", "95.42", "96.47", "88.35", "96.92", "96.53", "93.1", "95.81", "92.25"),
    },
}

SIZE_COLUMNS = (SizeCategory.SMALL, SizeCategory.MEDIUM, SizeCategory.LARGE)
