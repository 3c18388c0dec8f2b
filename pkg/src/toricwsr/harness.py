"""Randomized checks of the closed-form theorems against independent routes.

Each trial is a pure function of ``(seed, trial index)`` so trials can run in
any order or in parallel and still give the same report.
"""

import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor

from .applications import cellular_basis, picard_report, reduce_mod_J
from .errors import CheckFailed, NoSmoothVertex
from .lattice import Lattice, lattice_index, lattice_member, matvec, rank, snf
from .pair import even_cohomology_check, normalize_smooth, random_pair
from .wsr import (
    SRPolynomial,
    integrality_check,
    intersection_oracle,
    substitute,
    vertex_substitution,
    wsr2_basis,
    wsr2_obstruction,
)

M_RANGE = (3, 8)
NONMEMBERS_PER_PAIR = 10
SAMPLE_BOX = 20


def trial_seed(seed, k):
    return seed * 1_000_003 + k


def trial_pair(seed, k, bound, m=None):
    if m is None:
        lo, hi = M_RANGE
        m = lo + k % (hi - lo + 1)
    return random_pair(m, bound, trial_seed(seed, k))


def oracle_trial(args):
    """Compare the closed form with the intersection fold; ``None`` on agreement."""
    seed, k, bound, m = args
    pair = trial_pair(seed, k, bound, m)
    closed = wsr2_basis(pair).lattice()
    folded = intersection_oracle(pair)
    if closed == folded:
        return None
    return {
        "trial": k,
        "lambda": pair.lambdas,
        "closed_form_hnf": closed.basis,
        "oracle_hnf": folded.basis,
    }


def sample_nonmembers(lattice, rng, count=NONMEMBERS_PER_PAIR, box=SAMPLE_BOX, tries=1000):
    out = []
    for _ in range(tries):
        if len(out) == count:
            break
        x = tuple(rng.randint(-box, box) for _ in range(lattice.ambient_dim))
        if not lattice_member(lattice, x):
            out.append(x)
    return out


def check_invariants(pair, seed=0):
    """Run every module invariant on ``pair``.

    Returns ``{name: (ok, witness)}`` with ``ok`` None when the check does not
    apply to this pair.
    """
    m = pair.m
    out = {}
    rng = random.Random(seed)

    def record(name, ok, witness=None):
        out[name] = (ok, None if ok else witness)

    record("vertex_dets_nonzero", all(pair.vertex_dets()), pair.vertex_dets())

    topo = even_cohomology_check(pair)
    diag = snf(pair.matrix).diagonal
    record(
        "even_cohomology_equivalence",
        (topo.minor_gcd == 1) == (diag == (1, 1)) == (not topo.h3_invariants),
        {"minor_gcd": topo.minor_gcd, "snf_diagonal": diag},
    )

    basis = wsr2_basis(pair)
    kernel = basis.kernel
    record(
        "kernel_relations",
        len(kernel) == m - 2 and all(matvec(pair.matrix, t) == (0, 0) for t in kernel),
        kernel,
    )
    record(
        "phi_ends_vanish",
        all(w[0] == 0 and w[-1] == 0 for w in basis.phi_images),
        basis.phi_images,
    )
    record(
        "phi_injective_on_K",
        (rank(basis.phi_images, m) if basis.phi_images else 0) == m - 2,
        basis.phi_images,
    )

    closed = basis.lattice()
    folded = intersection_oracle(pair)
    record("closed_form_equals_intersection", closed == folded,
           {"closed_form": closed.basis, "oracle": folded.basis})

    det = basis.determinant()
    index_ok = det != 0 and closed.rank == m
    if index_ok:
        idx = lattice_index(closed)
        index_ok = abs(det) == idx == picard_report(pair).index
    record("index_consistency", index_ok, {"det": det, "hnf": closed.basis})

    basis_fail = None
    for vec in basis.vectors:
        res = integrality_check(pair, SRPolynomial.linear(vec))
        obs = wsr2_obstruction(pair, vec)
        if not res.passed or obs is not None:
            basis_fail = {"vector": vec, "integrality": res.witness, "cramer": obs}
            break
    record("basis_vectors_integral", basis_fail is None, basis_fail)

    reject_fail = None
    for x in sample_nonmembers(closed, rng):
        res = integrality_check(pair, SRPolynomial.linear(x))
        obs = wsr2_obstruction(pair, x)
        if res.passed or res.witness is None or obs is None:
            reject_fail = {"vector": x, "integrality": res.passed, "cramer": obs}
            break
    record("nonmembers_rejected", reject_fail is None, reject_fail)

    sub_fail = None
    a_poly, b_poly = SRPolynomial.linear(pair.a), SRPolynomial.linear(pair.b)
    for i in range(1, m + 1):
        if substitute(pair, a_poly, i) != {(1, 0): 1} or substitute(pair, b_poly, i) != {(0, 1): 1}:
            sub_fail = {"vertex": i, "z": vertex_substitution(pair, i)}
            break
    record("substitution_recovers_u", sub_fail is None, sub_fail)

    x = tuple(rng.randint(-SAMPLE_BOX, SAMPLE_BOX) for _ in range(m))
    cls = reduce_mod_J(pair, x)
    record(
        "reduce_mod_J_idempotent",
        reduce_mod_J(pair, cls.canonical_rep) == cls
        and lattice_member(Lattice.from_generators((pair.a, pair.b), m),
                           tuple(u - v for u, v in zip(x, cls.canonical_rep))),
        {"x": x, "rep": cls.canonical_rep},
    )

    if pair.is_smooth():
        record("smooth_gives_full_lattice",
               closed == Lattice.full(m) and abs(det) == 1, closed.basis)
    else:
        out["smooth_gives_full_lattice"] = (None, None)

    try:
        norm = normalize_smooth(pair)
    except NoSmoothVertex:
        out["cellular_identity"] = (None, None)
        out["normalization_invariance"] = (None, None)
    else:
        try:
            cb = cellular_basis(norm.pair)
            chart = [u[: m - 2] for u in cb.u]
            ok = (rank(chart, m - 2) if chart else 0) == m - 2
            record("cellular_identity", ok, {"u": cb.u})
        except CheckFailed as exc:
            record("cellular_identity", False, {"error": str(exc), "witness": exc.witness})
        before = (topo.even_cohomology, picard_report(pair).class_torsion, abs(det),
                  sorted(abs(d) for d in pair.vertex_dets()))
        after_pair = norm.pair
        after = (even_cohomology_check(after_pair).even_cohomology,
                 picard_report(after_pair).class_torsion,
                 abs(wsr2_basis(after_pair).determinant()),
                 sorted(abs(d) for d in after_pair.vertex_dets()))
        record("normalization_invariance", before == after,
               {"before": before, "after": after, "g": norm.g, "rotation": norm.rotation})
    return out


def fuzz_trial(args):
    seed, k, bound, m = args
    pair = trial_pair(seed, k, bound, m)
    results = check_invariants(pair, trial_seed(seed, k))
    return k, pair.lambdas, results


def run_trials(fn, seed, trials, bound, m=None, jobs=1):
    tasks = [(seed, k, bound, m) for k in range(trials)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, tasks, chunksize=max(1, trials // (4 * jobs))))
    return [fn(t) for t in tasks]


def summarize_fuzz(results):
    passed, failed, skipped = Counter(), Counter(), Counter()
    failures = []
    for k, lambdas, checks in results:
        for name, (ok, witness) in checks.items():
            if ok is None:
                skipped[name] += 1
            elif ok:
                passed[name] += 1
            else:
                failed[name] += 1
                failures.append({"trial": k, "lambda": lambdas, "invariant": name, "witness": witness})
    names = sorted(set(passed) | set(failed) | set(skipped))
    table = {n: {"passed": passed[n], "failed": failed[n], "skipped": skipped[n]} for n in names}
    return table, failures
