"""Regenerate corpus/*.json from PARI/GP (via cypari2).

Each label is matched to a Galois orbit of the newspace by the data published
alongside it: the Hecke field (degree, and discriminant where stated) and
a_p = 0 at the listed primes. The match must be unique.
Coefficients are written as integer coordinates in an integral basis of the
Hecke field, expressed over a root of the polredabs'd field polynomial.
"""
import json
import sys
from datetime import date

import cypari2

FORMS = [
    # label, primes with a_p = 0, Hecke field degree, field discriminant (None = not stated)
    ("73.2.a.c", [59], 2, 13),
    ("167.2.a.a", [11], 2, 5),
    ("383.2.a.a", [13], 2, 5),
    ("151.2.a.a", [41], 3, None),
    ("186.4.a.a", [11], 1, 1),
    ("210.4.a.e", [11, 23], 1, 1),
    ("1265.4.a.c", [53], 1, 1),
    ("390.6.a.c", [7], 1, 1),
    ("66.8.a.a", [5], 1, 1),
]
NCOEFFS = 100
SPAN_BOUND = 300

pari = cypari2.Pari()
pari.allocatemem(2 * 10**9)


def build(label, primes, degree, disc):
    n_level, weight, _, _ = label.split(".")
    pari(f"mf = mfinit([{n_level},{weight}],0); L = mfeigenbasis(mf); P = mffields(mf);")
    pmax = max(primes)
    matches = []
    for i in range(1, int(pari("#L")) + 1):
        if int(pari(f"poldegree(P[{i}])")) != degree:
            continue
        if disc is not None and int(pari(f"nfdisc(P[{i}])")) != disc:
            continue
        c = pari(f"c = mfcoefs(L[{i}], {pmax}); [lift(c[q + 1]) | q <- {primes}]")
        if all(str(v) == "0" for v in c):
            matches.append(i)
    assert len(matches) == 1, (label, matches)
    pick = matches[0]
    pari(f"F = L[{pick}]; f = P[{pick}];")
    deg = int(pari("poldegree(f)"))
    if deg == 1:
        pari("Q = x; back = Mod(0, x); f = y;")
    else:
        pari("R = polredabs(subst(f, y, x), 1); Q = R[1]; back = R[2];")
    pari(f"cf = mfcoefs(F, {SPAN_BOUND});")
    # a_n as polynomials in the new root x, reduced mod Q
    pari("an = vector(#cf - 1, n, lift(subst(lift(Mod(lift(cf[n+1]), f)), y, back)));")
    pari("K = nfinit(Q); B = K.zk;")
    pari("coords = vector(#an, n, nfalgtobasis(K, Mod(an[n], Q)));")
    pari("M = matconcat(coords); idx = if(matrank(M) < poldegree(Q), 0, abs(matdet(mathnf(M))));")
    field_poly = [int(c) for c in pari("Vecrev(Q)")]
    disc = int(pari("nfdisc(Q)"))
    index = int(pari("idx"))
    basis_num = []
    basis_den = []
    for i in range(1, deg + 1):
        den = int(pari(f"denominator(content(B[{i}]))"))
        num = [int(c) for c in pari(f"Vecrev(B[{i}] * {den}, {deg})")]
        basis_num.append(num)
        basis_den.append(den)
    an = {}
    for n in range(1, NCOEFFS + 1):
        an[str(n)] = [int(c) for c in pari(f"coords[{n}]")]
    for p in primes:
        assert all(c == 0 for c in an[str(p)]), (label, p)
    assert an["1"] == [1] + [0] * (deg - 1), label
    record = {
        "label": label,
        "level": int(n_level),
        "weight": int(weight),
        "field_poly": field_poly,
        "degree": deg,
        "field_disc": disc,
        "hecke_ring_index": index if index else None,
        "basis": {"kind": "explicit", "numerators": basis_num, "denominators": basis_den},
        "an": an,
    }
    return {
        "schema_version": 1,
        "record": record,
        "provenance": {
            "source": "manual",
            "retrieved": str(date.today()),
            "note": "computed with PARI/GP mfinit/mfeigenbasis; orbit matched by Hecke field and a_p = 0",
        },
    }


def main(outdir):
    for label, primes, degree, disc in FORMS:
        doc = build(label, primes, degree, disc)
        with open(f"{outdir}/{label}.json", "w") as fh:
            json.dump(doc, fh, indent=1, sort_keys=False)
            fh.write("\n")
        r = doc["record"]
        print(label, r["degree"], r["field_poly"], r["field_disc"], r["hecke_ring_index"], flush=True)


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "corpus")
