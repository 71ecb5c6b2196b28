"""Self-check suites behind the ``verify`` CLI command.

Each suite returns a list of (check name, ok, detail) triples and is
deterministic.  The CLI prints one summary line per suite and exits
nonzero if any check fails.
"""
from __future__ import annotations

import itertools
import math
from fractions import Fraction

from . import asym, binomstats, mcsim, polycyc, singexact

Check = tuple[str, bool, str]

HALF = Fraction(1, 2)
THIRD = Fraction(1, 3)


def suite_algebra() -> list[Check]:
    checks: list[Check] = []

    ok = True
    for n in range(1, 129):
        prod = polycyc.IntPolynomial((1,))
        for d in polycyc.divisors(n):
            prod = prod * polycyc.cyclotomic(d)
        expect = polycyc.IntPolynomial([-1] + [0] * (n - 1) + [1])
        if prod != expect:
            ok = False
            break
    checks.append(("cyclotomic product equals x^n - 1 for n <= 128", ok, ""))

    ok = all(
        polycyc.cyclotomic(d).is_monic()
        and polycyc.cyclotomic(d).degree == polycyc.totient(d)
        and polycyc.cyclotomic(d).coeffs[0] == 1
        for d in range(2, 129))
    checks.append(("cyclotomic monic, degree phi(d), constant 1 for d <= 128", ok, ""))

    ok = True
    for p in (2, 3, 5, 7, 11, 13):
        for n in range(1, 51):
            rem = polycyc.reduce_mod_cyclotomic(polycyc.cyclotomic(n * p), n)
            if any(c % p for c in rem.coeffs):
                ok = False
    checks.append(("cyclotomic(n*p) mod cyclotomic(n) has coefficients "
                   "divisible by p (p <= 13, n <= 50)", ok, ""))

    ok = True
    for n in (6, 8, 9, 10, 12):
        for bits in itertools.product((0, 1), repeat=n):
            row = polycyc.FirstRow(n, bits)
            f = row.polynomial()
            for d in polycyc.divisors(n):
                in_rn = polycyc.reduce_mod_cyclotomic(f, d).is_zero()
                in_rd = polycyc.reduce_mod_cyclotomic(
                    polycyc.fold(f, n, d), d).is_zero()
                if in_rn != in_rd:
                    ok = False
    checks.append(("divisibility commutes with folding (exhaustive small n)", ok, ""))
    return checks


def suite_bounds() -> list[Check]:
    checks: list[Check] = []
    for q in (HALF, THIRD):
        ok = True
        detail = ""
        for n in range(2, 31):
            for d in polycyc.divisors(n):
                if d == 1:
                    continue
                lower, upper = singexact.prob_bounds(d, n, q)
                value = singexact.prob_divisor_general(d, n, q)
                if value > upper or (lower is not None and value < lower):
                    ok = False
                    detail = f"violated at n={n}, d={d}"
        checks.append((f"divisor probability bounds hold for n <= 30, q={q}",
                       ok, detail))
    return checks


def suite_closed_forms() -> list[Check]:
    checks: list[Check] = []
    for q in (HALF, THIRD):
        ok = True
        detail = ""
        for n in (2, 3, 4, 5, 6, 7, 9, 10, 14, 15, 21, 22, 25):
            cf = singexact.prob_union_closed_form(n, q)
            bf = singexact.prob_union_bruteforce(n, q)
            if cf != bf:
                ok = False
                detail = f"mismatch at n={n}: {cf} vs {bf}"
        checks.append((f"closed-form unions equal exhaustive enumeration, q={q}",
                       ok, detail))

    ok = True
    for n in range(2, 33):
        for d in polycyc.divisors(n):
            fac = polycyc.factorize(d)
            if d < 2 or d > 16 or len(fac) != 1:
                continue
            ((p, m),) = fac.items()
            if (singexact.prob_divisor_general(d, n, HALF)
                    != singexact.prob_divisor_prime_power(p, m, n, HALF)):
                ok = False
    checks.append(("box enumeration matches prime-power closed forms", ok, ""))
    return checks


def suite_asymptotics() -> list[Check]:
    checks: list[Check] = []

    ok = True
    for n in (2, 3, 5, 7, 11, 13, 17, 19, 23):
        exact = singexact.prob_union_closed_form(n, HALF)
        if float(exact) / asym.approx_main(n, HALF).value != 1.0:
            ok = False
    checks.append(("dominant-divisor sum is exact at primes n <= 23", ok, ""))

    ok = True
    prev = None
    for n in (2 ** 6, 2 ** 8, 2 ** 10):
        rel = abs(asym.approx_main(n, HALF).value
                  / asym.approx_closed(n, 0.5).value - 1)
        if rel > 0.05 or (prev is not None and rel >= prev):
            ok = False
        prev = rel
    checks.append(("sum and closed-form rate agree within 5%, tightening", ok, ""))

    ok = True
    for m in (2, 3, 5):
        prev = None
        for n in (100, 400, 1600):
            ratio = (float(binomstats.power_sum_exact(n, m, HALF))
                     / binomstats.power_sum_asymptotic(n, m, 0.5))
            dev = abs(ratio - 1)
            if not 0.8 <= ratio <= 1.2 or (prev is not None and dev >= prev):
                ok = False
            prev = dev
    checks.append(("power-sum approximation within 20%, deviation shrinking", ok, ""))

    n = 1000
    center = abs(binomstats.demoivre_approx(500, n, 0.5)
                 / float(binomstats.binom_pdf_exact(500, n, HALF)) - 1)
    band = max(
        abs(binomstats.demoivre_approx(k, n, 0.5)
            / float(binomstats.binom_pdf_exact(k, n, HALF)) - 1)
        for k in range(500 - 63, 500 + 64))
    checks.append(("normal approximation: 0.2% at center, 5% in the 2-sigma band",
                   center <= 0.002 and band <= 0.05,
                   f"center={center:.2e}, band={band:.2e}"))
    return checks


def suite_mc() -> list[Check]:
    checks: list[Check] = []
    first = mcsim.sample_singularity(4, 0.5, 200_000, seed=7)
    again = mcsim.sample_singularity(4, 0.5, 200_000, seed=7)
    checks.append(("rerun at fixed seed is bit-identical",
                   first.singular_count == again.singular_count, ""))

    counts = {s: mcsim.sample_singularity(6, 0.5, 200_000, seed=11,
                                          shards=s).singular_count
              for s in (1, 4, 16)}
    checks.append(("singular count invariant under shard count",
                   len(set(counts.values())) == 1, f"{counts}"))

    for n, exact in ((4, 0.5), (6, 7 / 16)):
        est = mcsim.sample_singularity(n, 0.5, 200_000, seed=3)
        ok = abs(est.p_hat - exact) <= 4 * est.stderr
        checks.append((f"estimate within 4 standard errors at n={n}", ok,
                       f"p_hat={est.p_hat:.5f}, exact={exact:.5f}"))
    return checks


SUITES = {
    "algebra": suite_algebra,
    "bounds": suite_bounds,
    "closed-forms": suite_closed_forms,
    "asymptotics": suite_asymptotics,
    "mc": suite_mc,
}
