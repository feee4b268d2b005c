"""Smoke test for the ghz_paradox extension.

Build and install first:  pip install --no-build-isolation -e crates/python
Then:                     python crates/python/python/smoke_test.py
"""

import json

import ghz_paradox as g


def main():
    assert "ghz-ququat-5" in g.catalog_names()

    t = g.Table.catalog("ghz-ququat-5")
    assert (t.d, t.parties, len(t)) == (4, 5, 6)
    v = t.verify()
    assert v.is_paradox and v.commuting and v.classical_forced
    assert v.phase_exp == 4  # e^{iπ·4/4} = -1
    assert t.oracle_verify().is_paradox
    assert t.is_genuine_multipartite() and t.is_genuine_dimensional()
    assert t.certificate() == [1] * 6

    assert g.generate(4, 5, n=1, a=1, b=3, c=1).rows == t.rows
    assert "dimension-even" in g.check_family(3, 5, n=1, a=1, b=2, c=1)
    try:
        g.generate(3, 5, n=1, a=1, b=2, c=1)
    except ValueError as e:
        assert "dimension-even" in str(e)
    else:
        raise AssertionError("invalid parameters accepted")

    mermin = g.Table(2, ["X X X", "X Y Y", "Y X Y", "Y Y X"], "mermin")
    assert mermin.verify().phase_exp == 2
    back = g.Table.from_json(mermin.to_json())
    assert back == mermin
    assert json.loads(mermin.to_json())["parties"] == 3
    assert mermin.render().splitlines()[1] == "X  X  X"

    prc = g.Table.catalog("prc-5qubit")
    assert [0, 1, 2] in prc.reducing_subsets()
    assert g.Table.catalog("example6-3ququat").min_dimensions() == [2, 2, 2]

    hits = g.search((2, 6), (3, 9))
    assert len(hits) == 120 and sum(h.genuine for h in hits) == 48
    assert all(h.table.d % 2 == 0 for h in hits)
    exhaustive = g.search((2, 2), (3, 3), mode="exhaustive")
    assert any(h.table.canonical().rows == mermin.canonical().rows for h in exhaustive)

    big = g.generate_even_parties(6)
    try:
        big.oracle_verify()
    except g.CapacityError:
        pass
    else:
        raise AssertionError("capacity guard not raised")

    print("smoke test passed")


if __name__ == "__main__":
    main()
