#!/usr/bin/env python3
"""Writes the comparison terms inf<n>_<m>.term and their .case files."""
import pathlib

HERE = pathlib.Path(__file__).resolve().parent
PRELUDE = """define one := \\a:Y. \\b:Y. a ;
define zero := \\a:Y. \\b:Y. b ;
define mx := \\x:X. \\y:X -> Bool. y x ;
define mb := \\x:X -> Bool. \\y:X. y x ;
"""


def numeral(m):
    body = "x"
    for _ in range(m):
        body = f"f ({body})" if body != "x" else "f x"
    return f"\\f:X -> X. \\x:X. {body}"


def inf(n):
    arg = "\\y:X. zero"
    for _ in range(n):
        arg = f"mb ({arg})"
    return f"\\n:Nat. n mx (\\y:X -> Bool. one) ({arg})"


def main():
    for n in range(1, 4):
        (HERE / f"inf{n}.term").write_text(PRELUDE + f"{inf(n)}\n")
        for m in range(0, 6):
            stem = f"inf{n}_{m}"
            (HERE / f"{stem}.term").write_text(
                PRELUDE + f"define inf := {inf(n)} ;\ndefine num := {numeral(m)} ;\ninf num\n")
            expected = "\\a:Y. \\b:Y. a" if m <= n else "\\a:Y. \\b:Y. b"
            (HERE / f"{stem}.case").write_text(
                f"name: {stem}\n"
                f"source: comparison of the numeral {m} against the bound {n}\n"
                "equations: nat_bool.eqs\n"
                f"term: {stem}.term\n"
                "expect-type: Bool\n"
                f"expect-normal: {expected}\n"
                "expect-sn: true\n")
        (HERE / f"inf{n}.case").write_text(
            f"name: inf{n}\n"
            f"source: the comparison term for the bound {n} has type Nat -> Bool\n"
            "equations: nat_bool.eqs\n"
            f"term: inf{n}.term\n"
            "expect-type: Nat -> Bool\n"
            "expect-good: true\n")


if __name__ == "__main__":
    main()
