"""Direct-scan oracle for the two enumeration counts.

Shares no code with relkit. Prints one JSON object:
  inc1_monads   relative monads on the root 1 -> {0, 1, 2} in finite sets
                with t(*) <= 2
  triv_to_tmax  monad morphisms from the trivial monad on J01 to TMAX
"""

import itertools
import json


def inc1_monads(max_t=2):
    # A monad on j(*) = 1 is a set T = {0..t-1}, a point e of T (the unit,
    # E(1, T) = T) and a map k: T -> (T -> T) (the extension, E(1, T) -> E(T, T)).
    count = 0
    for t in range(max_t + 1):
        points = range(t)
        endos = list(itertools.product(points, repeat=t))
        for e in points:
            for k in itertools.product(endos, repeat=t):
                # k(a)(e) = a
                if any(k[a][e] != a for a in points):
                    continue
                # k(e) = identity
                if list(k[e]) != list(points):
                    continue
                # k(a) then k(b) equals k(k(b)(a))
                if all(tuple(k[b][k[a][x]] for x in points) == k[k[b][a]] for a in points for b in points):
                    count += 1
    return count


def triv_to_tmax():
    # Bool enrichment: CH3 = 0 <= 1 <= 2, J01 = (0, 1), TMAX = (2, 2).
    # A component is a choice of an element of CH3(jx, tx), which has one
    # element when jx <= tx and none otherwise; the laws are equations
    # between parallel arrows of a poset and always hold.
    j, t = (0, 1), (2, 2)
    count = 0
    for choice in itertools.product((0, 1), repeat=2):
        if all(c == 1 and j[x] <= t[x] for x, c in enumerate(choice)):
            count += 1
    return count


if __name__ == "__main__":
    print(json.dumps({"inc1_monads": inc1_monads(), "triv_to_tmax": triv_to_tmax()}))
