#!/usr/bin/env python3
"""Build the czic_py extension module and exercise it end to end.

Usage: python3 python/smoke_test.py [--release]
"""

import json
import shutil
import subprocess
import sys
import sysconfig
import tempfile
from fractions import Fraction
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def build_extension(release: bool) -> Path:
    profile = "release" if release else "dev"
    target_dir = "release" if release else "debug"
    subprocess.run(
        ["cargo", "build", "-p", "czic-py", "--profile", profile],
        cwd=ROOT,
        check=True,
    )
    for name in ("libczic_py.so", "libczic_py.dylib", "czic_py.dll"):
        candidate = ROOT / "target" / target_dir / name
        if candidate.exists():
            return candidate
    raise SystemExit("built extension not found under target/")


def import_module(lib: Path):
    tmp = Path(tempfile.mkdtemp(prefix="czic_py_"))
    suffix = sysconfig.get_config_var("EXT_SUFFIX") or ".so"
    shutil.copy2(lib, tmp / f"czic_py{suffix}")
    # abi3 module: a plain .so name works too, keep both spellings around
    shutil.copy2(lib, tmp / "czic_py.so")
    sys.path.insert(0, str(tmp))
    import czic_py

    return czic_py


def frac(pair):
    return Fraction(pair[0], pair[1])


def main() -> None:
    release = "--release" in sys.argv[1:]
    czic_py = import_module(build_extension(release))

    # channel model
    cfg = czic_py.LdConfig(4, 3, 1)
    assert cfg.word_length() == 3
    assert frac(cfg.alpha()) == Fraction(1, 3)
    upper, top, low = czic_py.partition(cfg, "101")
    assert (upper, top, low) == ("10", "1", "1")
    outputs = czic_py.step(cfg, ["111", "100", "000", "000"])
    assert outputs[0] == "110", outputs

    # scheme runs hit their capacity formulas exactly
    res = czic_py.run_scheme("very-weak", cfg, 7)
    assert res.bits_per_user == 9 and res.blocks == 4
    assert frac(res.normalized_rate) == Fraction(3, 4)
    assert res.decode_success
    trace = json.loads(res.trace_json)
    assert trace["schema_version"] == 1 and len(trace["blocks"]) == 4

    res = czic_py.run_scheme("very-strong", czic_py.LdConfig(4, 1, 3), 1)
    assert frac(res.rate) == Fraction(5, 4)
    res = czic_py.run_scheme("global", czic_py.LdConfig(3, 3, 1), 1)
    assert frac(res.rate) == Fraction(5, 2) and res.blocks == 2

    # closed forms stay rational end to end
    assert frac(czic_py.c_sym_ld_fb(1, 3, 4)) == Fraction(3, 4)
    assert frac(czic_py.c_sym_ld_fb(4, 7, 3)) == Fraction(2, 3)
    assert frac(czic_py.gdof_nofb(3, 1)) == 1
    assert frac(czic_py.c_sym_global_fb(3, 1)) == Fraction(3, 2)
    assert frac(czic_py.type1_upper(1, 1)) == Fraction(1, 2)
    assert frac(czic_py.type2_upper(czic_py.LdConfig(4, 1, 3))) == Fraction(5, 4)
    assert czic_py.type2_upper(czic_py.LdConfig(4, 4, 3)) is None
    assert czic_py.classify_regime(1, 2) == "very-weak"
    assert czic_py.classify_regime(1, 0) == "very-strong"

    # Gaussian layer
    a, b, c, d, e = czic_py.compute_bounds(255.0, 15.0)
    assert abs(d - 4.0) < 1e-12 and abs(e - 2.0) < 1e-12
    assert d <= c <= a <= b

    report = czic_py.gap_report(2.0**20, 2.0**6, 4)
    assert report.regime == "very-weak" and report.guarded
    assert report.pass_ and report.gap <= 2.75

    report = czic_py.gap_report(20.0, 4.0, 3)
    assert report.case == "II" and report.pass_

    est = czic_py.gdof_numeric(3.0, 4, 40)
    assert abs(est - 1.25) <= 0.05, est

    # out-of-regime runs raise
    try:
        czic_py.run_scheme("weak", czic_py.LdConfig(3, 4, 3), 0)
    except ValueError as err:
        assert "weak" in str(err)
    else:
        raise AssertionError("out-of-regime run did not raise")

    print("czic_py smoke test: OK")


if __name__ == "__main__":
    main()
