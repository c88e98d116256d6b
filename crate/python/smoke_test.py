#!/usr/bin/env python3
"""Smoke test for the hcipnc Python extension.

Builds nothing itself: it locates the compiled cdylib under target/,
stages it as an importable module, and exercises a few operations.

    cargo build -p hcipnc-python --release
    python3 python/smoke_test.py
"""

import math
import pathlib
import shutil
import sys
import tempfile

REPO = pathlib.Path(__file__).resolve().parent.parent


def stage_module() -> pathlib.Path:
    candidates = [
        REPO / "target" / profile / name
        for profile in ("release", "debug")
        for name in ("libhcipnc.so", "libhcipnc.dylib", "hcipnc.dll")
    ]
    built = next((p for p in candidates if p.exists()), None)
    if built is None:
        sys.exit(
            "no compiled extension found; run `cargo build -p hcipnc-python` first"
        )
    stage = pathlib.Path(tempfile.mkdtemp(prefix="hcipnc-py-"))
    suffix = ".pyd" if built.suffix == ".dll" else ".so"
    shutil.copy2(built, stage / f"hcipnc{suffix}")
    return stage


def approx(got, want, rel, label):
    if not math.isfinite(got) or abs(got / want - 1.0) > rel:
        sys.exit(f"FAIL {label}: got {got!r}, wanted {want!r} within {rel}")
    print(f"ok {label}: {got:.6e}")


def main():
    sys.path.insert(0, str(stage_module()))
    import hcipnc

    print(f"hcipnc {hcipnc.__version__}")

    approx(hcipnc.nuclear_radius_fm(238.0), 7.436585, 1e-6, "nuclear radius")
    approx(hcipnc.weak_charge(92, 146), -142.0992, 1e-9, "weak charge")

    binding = 510998.95 - hcipnc.sommerfeld_energy_ev(1, 1, -1)
    approx(binding, 13.6057, 1e-3, "hydrogen 1s binding (eV)")

    report = hcipnc.weak_charge_report(92, 238.0)
    approx(report["delta_p_m"], 0.0880, 1e-6, "oblique mass correction")
    approx(report["p_w_tilde"], 1.0022, 1e-3, "rescaled weak charge")

    v = hcipnc.uehling_potential_ev(92, 7.44)
    if v >= 0:
        sys.exit(f"FAIL uehling sign: {v}")
    print(f"ok uehling potential at the uranium surface: {v:.4e} eV")
    # deep inside the nucleus the folded form is regular while the
    # point-source form keeps its logarithmic spike
    v_point = hcipnc.uehling_potential_ev(92, 0.5)
    v_folded = hcipnc.uehling_folded_ev(92, 238.0, 0.5)
    if not (v_point < v_folded < 0):
        sys.exit(f"FAIL folding must regularize the interior: {v_point} vs {v_folded}")
    print(f"ok folded interior is regular: {v_folded:.4e} vs point {v_point:.4e} eV")
    far_dev = hcipnc.uehling_folded_ev(92, 238.0, 4000.0) / hcipnc.uehling_potential_ev(
        92, 4000.0
    )
    if abs(far_dev - 1.0) > 1e-3:
        sys.exit(f"FAIL folded must match point far outside: ratio {far_dev}")
    print(f"ok folded matches point far outside (ratio {far_dev:.8f})")

    result = hcipnc.compute_pnc(2, 4.001)
    approx(result["delta_loop_wf"], 3.332e-5, 0.03, "helium loop correction")
    approx(abs(result["m_plain_ev"]), 7.9398e-16, 0.02, "helium matrix element")

    rows = hcipnc.compute_table([(1, 1.007), (5, 10.807)])
    assert len(rows["rows"]) == 2 and not rows["failures"], rows
    approx(rows["rows"][1]["delta_loop_wf"], 1.044e-4, 0.03, "boron loop correction")

    assert len(hcipnc.benchmark_isotopes()) == 21
    print("ok benchmark isotope list has 21 entries")
    print("smoke test passed")


if __name__ == "__main__":
    main()
