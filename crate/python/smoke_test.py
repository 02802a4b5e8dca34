"""Smoke test for the Python bindings.

Build and install first:  pip install --no-build-isolation ./crates/python
"""

import json
from fractions import Fraction

import hnindex


def pairings(text):
    return [Fraction(x) for x in text.split(";")[0].split(",")]


def main():
    a2 = hnindex.Group("A2")
    assert a2.rank == 2 and a2.central_rank == 0
    assert len(a2.roots()) == 6
    assert len(a2.roots(levi=[1])) == 2

    # Retraction of (1,-1): solve by hand with the A2 Cartan matrix.
    mu = pairings(a2.retract("1,-1"))
    assert mu == [Fraction(1, 2), Fraction(0)], mu
    assert a2.retract([Fraction(1), -1]) == a2.retract("1,-1")
    assert a2.leq("1,-1", a2.retract("1,-1"))
    assert not a2.leq("1,0", "0,1")

    assert pairings(a2.project([1], "2,1")) == [0, 2]
    assert a2.hn_parabolic("0,3") == [1]

    cover = a2.check_cover(2, "2,2", samples=200, seed=7)
    assert cover["failures"] == [], cover
    assert cover == a2.check_cover(2, "2,2", samples=200, seed=7)

    cands = a2.enumerate_candidates("2,2")
    assert {"lambda": ["2", "2"], "gamma_M": []} in cands

    g2 = hnindex.Group("G2")
    c = g2.minimal_constants(0)
    assert [Fraction(x) for x in c["c_prime"]] == [Fraction(-2, 3), Fraction(-1)]

    assert a2.classify("down", ["1,1"]) == "open"
    chain = [[True, True], [False, True]]
    assert hnindex.classify_poset(chain, [0]) == "open"
    assert hnindex.classify_poset(chain, [1]) == "closed"

    code, out, err = hnindex.run(["roots", "--group", "A2", "--json"])
    assert code == 0 and len(json.loads(out)["result"]["roots"]) == 6
    code, out, err = hnindex.run(["roots", "--group", "Q1"])
    assert code == 2 and out == "" and err

    try:
        hnindex.Group("A0")
    except ValueError:
        pass
    else:
        raise AssertionError("A0 accepted")

    print("python smoke test: ok")


if __name__ == "__main__":
    main()
