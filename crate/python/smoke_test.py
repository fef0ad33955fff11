#!/usr/bin/env python3
"""Smoke test for the arithzeta_py extension module.

Build the module first:

    cargo build -p arithzeta-py          # or --release

The script locates the built cdylib, stages it under an importable name,
and exercises the main types and operations.
"""

import json
import shutil
import sys
import tempfile
from pathlib import Path

REPO_ROOT = Path(__file__).resolve().parent.parent


def stage_module() -> Path:
    candidates = [
        REPO_ROOT / "target" / "release" / "libarithzeta_py.so",
        REPO_ROOT / "target" / "debug" / "libarithzeta_py.so",
        REPO_ROOT / "target" / "release" / "libarithzeta_py.dylib",
        REPO_ROOT / "target" / "debug" / "libarithzeta_py.dylib",
    ]
    built = next((p for p in candidates if p.exists()), None)
    if built is None:
        sys.exit("build the extension first: cargo build -p arithzeta-py")
    stage = Path(tempfile.mkdtemp(prefix="arithzeta_py_"))
    shutil.copy2(built, stage / "arithzeta_py.so")
    return stage


sys.path.insert(0, str(stage_module()))

import arithzeta_py as az  # noqa: E402


def check(cond, label):
    if not cond:
        sys.exit(f"FAIL: {label}")
    print(f"ok: {label}")


# classical functions
check(az.phi(12) == 4, "phi(12) = 4")
check(az.phi(1) == 1, "phi(1) = 1")
check(az.sigma(1, 6) == 12, "sigma_1(6) = 12")
check(az.psi(12) == 24, "psi(12) = 24")
check(az.liouville(12) == -1, "lambda(12) = -1")
check(az.mobius(10) == 1 and az.mobius(12) == 0, "mobius values")
check(az.chi_minus1(3) == -1, "chi(3) = -1")
check(az.r2(5) == 8, "r2(5) = 8")
check(az.sl2_index(6) == 12, "SL2 index at 6 is psi(6)")
check(az.euler_check(50), "Euler's theorem to 50")

# quadratic field layer
k = az.QuadraticField(-1)
check(k.discriminant() == -4, "disc Q(i) = -4")
check([a[1] for a in k.split(5)] == ["split", "split"], "5 splits in Q(i)")
check(k.split(3)[0][1] == "inert", "3 inert in Q(i)")
coeffs = k.zeta_coefficients(10)
check(coeffs[4] == 2 and coeffs[2] == 0, "Dedekind coefficients a_5 = 2, a_3 = 0")
rows = k.table("phi", 5)
check(rows[0] == (1, "(1)", 1), "phi_K at the unit ideal")
check(k.unit_count_at_norm(5) == 4, "unit count oracle at norm 5")

# varieties
v = az.Variety.builtin("P1", 2)
check(v.count_points(2) == 5, "P1(F_4) has 5 points")
check(v.zeta_series(4) == [1, 3, 7, 15, 31], "P1/F_2 zeta row")
check(v.spectrum(4) == [3, 1, 2, 3], "P1/F_2 closed-point spectrum")
check(v.series("psi", 2)[1] == 9, "psi series coefficient")
report = json.loads(v.verify(5))
check(
    all(e["status"] == "pass" for e in report["entries"]),
    "P1/F_2 variety battery all pass",
)

cubic = az.Variety.from_spec(
    "p=3\nambient=projective\ndim=2\npoly=y^2*z - x^3 + x*z^2\n"
)
check(cubic.count_points(1) == 4, "cubic over F_3 has 4 points")
check(cubic.zeta_series(4) == [1, 4, 16, 52, 160], "cubic zeta row")

# Witt vectors
w = az.WittRing(2, 2)
check(w.size() == 4, "W_2(F_2) has 4 elements")
check(w.mul([1, 1], [1, 1]) == [1, 0], "(1,1)^2 = 1 in W_2(F_2)")
check(w.add([1, 0], [1, 0]) == [0, 1], "1 + 1 = 2 in W_2(F_2)")
check(w.invert([1, 1]) == [1, 1], "3 is its own inverse in Z/4")
check(w.unit_count() == 2, "W_2(F_2) has 2 units")

group = json.loads(az.psi_group_report(2, 2))
check(group["coset_count"] == 6 and group["matches_psi"], "G(4) has psi(4) = 6 cosets")
check(az.g_order(12) == 24, "#G(12) = psi(12)")

# a full suite through the bindings
witt_report = json.loads(az.run_suite("witt"))
check(
    all(e["status"] == "pass" for e in witt_report["entries"]),
    "witt suite passes end to end",
)

print("smoke test OK")
