#!/usr/bin/env python3
"""Minute-scale demonstration: sweep a small cycle with a trapping sink and
print how transfer efficiency moves with the coherent/incoherent mix.
"""

from sqws import build_preset, run_sweep


def main():
    cfg = build_preset("demo")
    records = run_sweep(cfg, workers=1)
    print(f"graph {records[0].graph_id}, t_max={records[0].t_max:g}, "
          f"sink rate {records[0].sink_rate:g}")
    print("omega  gamma  efficiency  peak_success  t_S")
    for r in records:
        print(f"{r.omega:5.2f}  {r.gamma:5.2f}  {r.efficiency:10.4f}  "
              f"{r.peak_success:12.4f}  {r.entropy_peak_time:6.2f}")


if __name__ == "__main__":
    main()
