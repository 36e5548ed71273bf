#!/usr/bin/env python3
"""Reproduce the two worked sources end to end and print their tables.

Covers the full merge schedule of the 4-symbol source, the weight/length
vectors at its breakpoints, and the length-capped solutions of the 8-symbol
source (caps 5, 4, 3, and the infeasible 2.5).
"""

import numpy as np

from mergecode import (
    Infeasible,
    build_schedule,
    canonicalize,
    limited_code,
    optimal_code,
)


def show_schedule(p, title):
    print(f"\n== {title} ==")
    s = build_schedule(p)
    print(f"alpha_max = {s.alpha_max:.6g}")
    print("k  alpha_k     |U|  wstar      slope")
    for k in range(s.size):
        print(
            f"{k}  {s.alphas[k]:<10.6g}  {s.card[k]:<3d}"
            f"  {s.wstar_at_breakpoint[k]:<9.6g}  {s.slope[k]:.6g}"
        )
    for alpha in s.alphas:
        w, lengths, report = optimal_code(p, float(alpha), s)
        print(
            f"alpha={float(alpha):<9.6g} weights={np.round(w.weights, 4)}"
            f" lengths={np.round(lengths.real_lengths, 3)}"
            f" payoff={report.payoff:.4f}"
        )


def show_length_caps(p, caps):
    print("\n== length-capped codes ==")
    for cap in caps:
        try:
            r = limited_code(p, cap)
        except Infeasible as exc:
            print(f"cap {cap}: infeasible (minimum is {exc.min_achievable:g})")
            continue
        print(
            f"cap {cap}: alpha={r.alpha_hat:.6g}"
            f" lengths={np.round(r.lengths.real_lengths, 2)}"
            f" avg={r.avg_length:.4f}"
        )


def main():
    p4 = canonicalize([8 / 15, 4 / 15, 2 / 15, 1 / 15], 2)
    show_schedule(p4, "4-symbol source (8,4,2,1)/15")

    p8 = canonicalize(
        [1 / 26, 1 / 26, 2 / 26, 2 / 26, 2 / 26, 4 / 26, 5 / 26, 9 / 26], 2
    )
    show_schedule(p8, "8-symbol source (9,5,4,2,2,2,1,1)/26")
    show_length_caps(p8, [5.0, 4.0, 3.0, 2.5])


if __name__ == "__main__":
    main()
