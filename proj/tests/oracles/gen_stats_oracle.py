#!/usr/bin/env python3
"""Regenerates tests/fixtures/stats_oracle_fixture.h.

Freezes random samples together with reference statistics computed by
scipy (Shapiro-Wilk W/p, Welch one-tailed t/p) so the C++ test suite can
compare against an independent implementation without a Python runtime
at test time. Run from the repository root:

    python3 tests/oracles/gen_stats_oracle.py
"""

import numpy as np
from scipy import stats

OUT = "tests/fixtures/stats_oracle_fixture.h"

N_VALUES = [10, 50, 155, 500]

DISTS = [
    ("normal01", lambda rng, n: rng.normal(0.0, 1.0, n)),
    ("normal52", lambda rng, n: rng.normal(5.0, 2.0, n)),
    ("uniform", lambda rng, n: rng.uniform(-1.0, 3.0, n)),
    ("exponential", lambda rng, n: rng.exponential(1.5, n)),
    ("lognormal", lambda rng, n: rng.lognormal(0.0, 0.5, n)),
    ("student_t4", lambda rng, n: rng.standard_t(4, n)),
    ("bimodal", lambda rng, n: np.concatenate(
        [rng.normal(-2.0, 0.5, n // 2), rng.normal(2.0, 0.5, n - n // 2)])),
]


def fmt(x):
    return f"{float(x):.17g}"


def emit_vector(vals):
    return "{" + ", ".join(fmt(v) for v in vals) + "}"


def main():
    lines = []
    lines.append("// Generated by tests/oracles/gen_stats_oracle.py -- do not edit by hand.")
    lines.append("// Reference values computed with scipy.stats (shapiro, ttest_ind).")
    lines.append("#pragma once")
    lines.append("")
    lines.append("#include <vector>")
    lines.append("")
    lines.append("namespace oracle {")
    lines.append("")
    lines.append("struct ShapiroCase {")
    lines.append("    const char* name;")
    lines.append("    std::vector<double> sample;")
    lines.append("    double w;")
    lines.append("    double p;")
    lines.append("};")
    lines.append("")
    lines.append("struct WelchCase {")
    lines.append("    const char* name;")
    lines.append("    std::vector<double> a;")
    lines.append("    std::vector<double> b;")
    lines.append("    double t;")
    lines.append("    double p_one_tailed;  // H1: mean(a) > mean(b)")
    lines.append("};")
    lines.append("")

    shapiro_cases = []
    case_idx = 0
    while len(shapiro_cases) < 50:
        n = N_VALUES[case_idx % len(N_VALUES)]
        dist_name, gen = DISTS[case_idx % len(DISTS)]
        rng = np.random.default_rng(10_000 + case_idx)
        sample = gen(rng, n)
        w, p = stats.shapiro(sample)
        shapiro_cases.append((f"{dist_name}_n{n}_{case_idx}", sample, w, p))
        case_idx += 1

    lines.append("inline const std::vector<ShapiroCase>& shapiro_cases() {")
    lines.append("    static const std::vector<ShapiroCase> cases = {")
    for name, sample, w, p in shapiro_cases:
        lines.append(f'        {{"{name}", {emit_vector(sample)}, {fmt(w)}, {fmt(p)}}},')
    lines.append("    };")
    lines.append("    return cases;")
    lines.append("}")
    lines.append("")

    welch_specs = []
    rng = np.random.default_rng(777)
    welch_specs.append(("shifted_small", rng.normal(0, 1, 8), rng.normal(-1.2, 1, 9)))
    welch_specs.append(("shifted_medium", rng.normal(0.5, 2, 30), rng.normal(0.0, 0.7, 25)))
    welch_specs.append(("null_equal_var", rng.normal(0, 1, 40), rng.normal(0, 1, 40)))
    welch_specs.append(("unequal_var", rng.normal(1.0, 3.0, 20), rng.normal(0.4, 0.2, 50)))
    welch_specs.append(("negative_effect", rng.normal(-0.5, 1, 15), rng.normal(0.5, 1, 15)))
    welch_specs.append(("tiny_n", rng.normal(2.0, 0.5, 3), rng.normal(0.0, 0.5, 4)))
    welch_specs.append(("large_shift", rng.normal(10.0, 0.01, 20), rng.normal(0.0, 0.01, 20)))
    welch_specs.append(("heavy_tail", rng.standard_t(3, 35) + 0.8, rng.standard_t(3, 28)))
    welch_specs.append(("skewed", rng.exponential(2.0, 26), rng.exponential(1.0, 31)))
    welch_specs.append(("big_samples", rng.normal(0.05, 1, 400), rng.normal(0.0, 1, 380)))
    welch_specs.append(("var_ratio_100", rng.normal(0.3, 5.0, 60), rng.normal(0.0, 0.05, 60)))
    welch_specs.append(("close_means", rng.normal(0.02, 1.0, 100), rng.normal(0.0, 1.0, 100)))

    lines.append("inline const std::vector<WelchCase>& welch_cases() {")
    lines.append("    static const std::vector<WelchCase> cases = {")
    for name, a, b in welch_specs:
        t, p = stats.ttest_ind(a, b, equal_var=False, alternative="greater")
        lines.append(
            f'        {{"{name}", {emit_vector(a)}, {emit_vector(b)}, {fmt(t)}, {fmt(p)}}},')
    lines.append("    };")
    lines.append("    return cases;")
    lines.append("}")
    lines.append("")
    lines.append("}  // namespace oracle")
    lines.append("")

    with open(OUT, "w") as fh:
        fh.write("\n".join(lines))
    total = sum(len(s[1]) for s in shapiro_cases)
    print(f"wrote {OUT}: {len(shapiro_cases)} shapiro cases ({total} points), "
          f"{len(welch_specs)} welch cases")


if __name__ == "__main__":
    main()
