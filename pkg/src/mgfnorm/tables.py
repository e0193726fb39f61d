"""Published reference values for the test's null distribution and power.

These grids are the comparison targets of the table-reproduction reports:
limit-law moments for d = 1 (TABLE1), 95th percentiles of the scaled
statistic under the d-variate standard normal (TABLE2, the gamma = inf
column multiplied by 100 as is conventional), and percentage rejection
rates at the 5% level for n = 50 against a battery of alternatives
(POWER_TABLES, keys T3..T6 for d = 1, 2, 3, 5).

Power columns are restricted to the statistics this package implements;
the d = 1 study originally also listed four classical univariate tests
(Cramer-von Mises, Anderson-Darling, Shapiro-Wilk, Jarque-Bera) that are
widely available elsewhere and are not reproduced here.

Each power column is (label, statistic spec string); each row is
(label, alternative spec string, percentages in column order).
"""

INF = float("inf")

# limit-law mean and variance of the unscaled statistic, d = 1
TABLE1 = {
    "gammas": (2.5, 3.0, 4.0, 5.0, 7.0),
    "means": (2.6013, 0.7787, 0.2022, 0.0861, 0.0277),
    "variances": (4.7153, 0.5430, 0.0458, 0.0094, 0.0011),
}

# 95th percentiles of the scaled statistic under N_d(0, I_d); rows (n, d),
# columns the gamma grid; last column is 100 x the gamma = inf statistic
TABLE2 = {
    "alpha": 0.05,
    "gammas": (2.5, 3.0, 4.0, 5.0, 7.0, 10.0, INF),
    "rows": (
        (20, 1, (120.42, 105.16, 88.41, 79.48, 70.66, 64.74, 265.14)),
        (50, 1, (219.25, 173.63, 130.90, 111.24, 93.12, 82.02, 125.20)),
        (100, 1, (294.01, 218.62, 154.20, 126.76, 102.94, 89.04, 66.13)),
        (200, 1, (361.62, 254.88, 170.48, 136.65, 108.60, 92.88, 33.89)),
        (300, 1, (395.67, 271.05, 176.56, 140.20, 110.50, 94.19, 22.79)),
        (20, 2, (535.50, 413.65, 300.96, 249.60, 203.09, 174.73, 628.97)),
        (50, 2, (1086.28, 737.69, 464.16, 356.56, 268.57, 220.27, 291.96)),
        (100, 2, (1516.50, 947.61, 546.91, 402.84, 292.63, 235.24, 152.02)),
        (200, 2, (1867.44, 1089.76, 585.61, 419.94, 299.04, 238.36, 77.02)),
        (300, 2, (2035.48, 1141.98, 595.36, 422.25, 299.14, 238.42, 51.52)),
        (20, 3, (1460.39, 1044.12, 695.34, 549.27, 423.00, 350.28, 1157.20)),
        (50, 3, (3444.99, 2095.29, 1162.22, 831.36, 580.61, 451.38, 537.68)),
        (100, 3, (5054.15, 2781.23, 1384.12, 941.78, 628.33, 477.34, 278.23)),
        (200, 3, (6463.29, 3267.95, 1495.75, 980.63, 638.18, 481.29, 140.44)),
        (300, 3, (7108.14, 3439.05, 1508.96, 977.42, 633.30, 478.42, 93.78)),
        (20, 5, (6346.44, 4065.35, 2389.07, 1759.71, 1257.17, 986.77, 2903.55)),
        (50, 5, (20164.36, 10268.49, 4655.52, 2988.80, 1862.85, 1340.01, 1361.04)),
        (100, 5, (34187.51, 15193.42, 5934.77, 3545.86, 2070.71, 1439.25, 705.30)),
        (200, 5, (47436.90, 18844.25, 6578.37, 3746.81, 2114.14, 1450.44, 355.91)),
        (300, 5, (54128.44, 20321.98, 6715.41, 3749.27, 2091.10, 1436.11, 237.36)),
    ),
}

_T_COLS = (
    ("T2.5", "T:gamma=2.5"),
    ("T5", "T:gamma=5"),
    ("T10", "T:gamma=10"),
    ("Tinf", "T:gamma=inf"),
)

_MV_COLS = (
    ("MS", "mardia_skew"),
    ("MK", "mardia_kurt"),
    ("HZ", "hz"),
    ("EN", "energy"),
    ("HM", "hjm:gamma=5"),
    ("HJ", "hj:beta=2"),
) + _T_COLS


def _mv_rows(d, grid):
    labels_alts = (
        ("N(0,I)", "normal:d=%d" % d),
        ("NMIX1", "nmix1:d=%d" % d),
        ("NMIX2", "nmix2:d=%d" % d),
        ("t5(0,I)", "mvt:nu=5,d=%d" % d),
        ("t10(0,I)", "mvt:nu=10,d=%d" % d),
        ("chisq(15)", "chisq:k=15,d=%d,iid" % d),
        ("chisq(20)", "chisq:k=20,d=%d,iid" % d),
        ("logistic(0,1)", "logistic:d=%d,iid" % d),
        ("gamma(5,1)", "gamma:a=5,b=1,d=%d,iid" % d),
        ("gamma(4,2)", "gamma:a=4,b=2,d=%d,iid" % d),
        ("PVII(10)", "pearson7:m=10,d=%d,iid" % d),
        ("PVII(20)", "pearson7:m=20,d=%d,iid" % d),
        ("N*t(3)", "t:nu=3,d=%d,onemarg" % d),
        ("N*chisq(5)", "chisq:k=5,d=%d,onemarg" % d),
        ("N*chisq(10)", "chisq:k=10,d=%d,onemarg" % d),
        ("S(LN(0,1/2))", "slogn:mu=0,sigma=0.5,d=%d" % d),
        ("NM(rho=0.2)", "nmrho:rho=0.2,d=%d" % d),
    )
    return tuple(
        (label, alt, pcts) for (label, alt), pcts in zip(labels_alts, grid)
    )


POWER_TABLES = {
    "T3": {
        "d": 1,
        "n": 50,
        "alpha": 0.05,
        "columns": (
            ("Z3", "zghoul:gamma=3"),
            ("Z15", "zghoul:gamma=15"),
        ) + _T_COLS,
        "rows": (
            ("N(0,1)", "normal:d=1", (5, 5, 5, 5, 5, 5)),
            ("NMIX1", "nmix1:d=1", (24, 20, 24, 23, 21, 18)),
            ("NMIX2", "nmix2:d=1", (34, 28, 34, 32, 30, 26)),
            ("t(3)", "t:nu=3,d=1,iid", (65, 57, 65, 63, 60, 52)),
            ("t(5)", "t:nu=5,d=1,iid", (41, 35, 41, 39, 37, 32)),
            ("t(10)", "t:nu=10,d=1,iid", (20, 17, 20, 20, 19, 17)),
            ("LN(0,1/2)", "lognormal:mu=0,sigma=0.5,d=1,iid",
             (80, 89, 76, 85, 88, 91)),
            ("LN(0,1/4)", "lognormal:mu=0,sigma=0.25,d=1,iid",
             (37, 45, 34, 40, 44, 47)),
            ("chisq(5)", "chisq:k=5,d=1,iid", (69, 82, 62, 74, 80, 83)),
            ("chisq(15)", "chisq:k=15,d=1,iid", (34, 43, 31, 38, 41, 45)),
            ("logistic(0,1)", "logistic:d=1,iid", (24, 20, 24, 23, 21, 19)),
            ("weibull(10)", "weibull:k=10,d=1,iid", (28, 36, 25, 31, 35, 37)),
            ("weibull(20)", "weibull:k=20,d=1,iid", (44, 53, 40, 48, 52, 55)),
            ("PVII(5)", "pearson7:m=5,d=1,iid", (40, 35, 41, 39, 37, 32)),
            ("PVII(10)", "pearson7:m=10,d=1,iid", (20, 17, 20, 19, 18, 16)),
            ("SN(3)", "sn:lam=3,d=1,iid", (30, 39, 25, 33, 37, 41)),
            ("SN(5)", "sn:lam=5,d=1,iid", (43, 58, 36, 49, 55, 61)),
        ),
    },
    "T4": {
        "d": 2,
        "n": 50,
        "alpha": 0.05,
        "columns": _MV_COLS,
        "rows": _mv_rows(2, (
            (5, 5, 5, 5, 5, 5, 5, 5, 5, 5),
            (85, 34, 75, 82, 57, 73, 48, 69, 80, 86),
            (44, 48, 29, 38, 57, 53, 55, 54, 52, 44),
            (53, 62, 42, 51, 67, 60, 60, 60, 58, 53),
            (24, 26, 14, 19, 32, 29, 29, 29, 28, 25),
            (49, 19, 34, 42, 26, 41, 30, 39, 45, 52),
            (40, 16, 27, 33, 24, 34, 25, 32, 37, 42),
            (24, 27, 15, 19, 33, 28, 28, 29, 28, 25),
            (67, 27, 52, 61, 38, 57, 41, 54, 62, 70),
            (76, 32, 64, 72, 42, 66, 48, 62, 71, 78),
            (20, 21, 11, 14, 27, 23, 24, 24, 23, 20),
            (11, 10, 7, 8, 14, 12, 13, 13, 12, 12),
            (47, 52, 42, 49, 61, 55, 56, 56, 54, 47),
            (63, 25, 52, 60, 36, 52, 39, 49, 57, 65),
            (38, 15, 26, 32, 21, 32, 24, 30, 35, 40),
            (26, 25, 15, 21, 29, 30, 31, 31, 29, 26),
            (6, 6, 5, 6, 6, 6, 6, 6, 6, 6),
        )),
    },
    "T5": {
        "d": 3,
        "n": 50,
        "alpha": 0.05,
        "columns": _MV_COLS,
        "rows": _mv_rows(3, (
            (5, 5, 5, 5, 5, 5, 5, 5, 5, 5),
            (89, 36, 81, 91, 59, 72, 43, 66, 82, 91),
            (71, 76, 49, 66, 79, 79, 79, 80, 78, 72),
            (68, 78, 55, 68, 77, 73, 71, 73, 73, 69),
            (34, 38, 18, 27, 35, 38, 36, 38, 38, 34),
            (52, 21, 35, 49, 27, 42, 31, 39, 47, 55),
            (40, 16, 26, 37, 21, 33, 24, 30, 36, 44),
            (28, 30, 15, 22, 33, 31, 30, 31, 31, 28),
            (72, 30, 53, 69, 39, 58, 41, 53, 65, 75),
            (80, 36, 65, 79, 46, 66, 47, 61, 73, 83),
            (22, 22, 10, 16, 24, 25, 25, 26, 25, 23),
            (12, 10, 6, 8, 14, 13, 13, 13, 13, 12),
            (42, 43, 29, 40, 54, 48, 49, 49, 48, 43),
            (47, 18, 33, 46, 28, 39, 29, 36, 43, 51),
            (26, 12, 17, 24, 16, 22, 17, 21, 24, 28),
            (53, 58, 18, 43, 62, 58, 57, 58, 58, 54),
            (8, 7, 5, 6, 7, 8, 8, 8, 8, 8),
        )),
    },
    "T6": {
        "d": 5,
        "n": 50,
        "alpha": 0.05,
        "columns": _MV_COLS,
        "rows": _mv_rows(5, (
            (5, 5, 5, 5, 5, 5, 5, 5, 5, 5),
            (82, 33, 74, 94, 43, 58, 34, 51, 68, 86),
            (94, 94, 68, 89, 95, 95, 95, 96, 95, 94),
            (88, 94, 72, 88, 89, 90, 86, 89, 90, 89),
            (54, 58, 23, 45, 51, 55, 51, 55, 57, 55),
            (51, 22, 30, 52, 26, 39, 29, 36, 44, 56),
            (39, 16, 22, 39, 20, 30, 23, 28, 33, 42),
            (33, 34, 13, 25, 31, 34, 31, 34, 36, 33),
            (72, 33, 49, 74, 37, 55, 40, 51, 63, 76),
            (81, 40, 60, 84, 40, 64, 47, 59, 72, 85),
            (27, 25, 9, 19, 26, 28, 26, 28, 29, 27),
            (12, 9, 6, 9, 12, 12, 11, 12, 12, 12),
            (35, 32, 16, 30, 42, 39, 38, 39, 39, 35),
            (28, 13, 16, 28, 19, 23, 19, 22, 25, 31),
            (16, 8, 10, 15, 13, 14, 12, 13, 15, 18),
            (89, 95, 77, 90, 90, 90, 86, 90, 91, 89),
            (12, 9, 5, 11, 12, 13, 12, 13, 13, 12),
        )),
    },
}

TABLE_IDS = ("T2", "T3", "T4", "T5", "T6")
