"""Smoke test for the iquantum_py extension.

Build it first: pip install --no-build-isolation ./crates/py
"""

import json
import sys

import iquantum_py as iq


def lines(result):
    code, raw = result
    return code, [json.loads(line) for line in raw]


def main():
    names = iq.catalog()
    assert "quasisplit_a2" in names, names

    code, report = lines(iq.invariants("quasisplit_a2", [3]))
    assert code == 0
    assert report[0]["report"]["degrees"][0]["degree"] == 3
    assert report[-1]["kind"] == "summary"

    code, report = lines(iq.verify("unity", ell=[3, 5, 7]))
    assert code == 0 and report[-1]["passed"] == 3

    code, report = lines(iq.verify("frobenius", "split_a1", [3]))
    assert code == 0 and all(r["pass"] for r in report)

    code, report = lines(iq.verify("smalldim", "diagonal_a1xa1", [3]))
    assert report[0]["report"]["dim"] == 27

    print("B_1 on quasisplit_a2:", iq.b_generator("quasisplit_a2", 1))

    try:
        iq.verify("frobenius", ell=[4])
    except ValueError as err:
        print("rejected even level:", err)
    else:
        raise AssertionError("even level accepted")

    print("smoke test ok")
    return 0


if __name__ == "__main__":
    sys.exit(main())
