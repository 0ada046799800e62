"""One test per acceptance criterion; each prints a PASS/FAIL line with its evidence."""

import random
import time
from collections import defaultdict
from functools import lru_cache
from itertools import combinations, product

from causalnet.classify import CLOSED_LABELS, IMPLICATIONS, classify, epi_oracle, fundamental_type, is_a, mono_oracle
from causalnet.coloring import (
    SortingNet,
    all_gap_orders,
    condense,
    complete_net,
    enumerate_harmonic,
    gaps,
    harmonic_oracle,
    is_harmonic,
    iter_mergings,
)
from causalnet.construct import add_edge, merge_two_vertices
from causalnet.decompose import PRECONDITION, THEOREMS
from causalnet.enumeration import canonical_key, nets_up_to, standard_net
from causalnet.errors import CycleFound, NoLemmaApplies, QuotientNotAcyclic
from causalnet.fixtures import (
    D1,
    Q1,
    S1,
    X1,
    five_vertex_sorting,
    immersion_example,
    net,
    six_vertex_condensed,
    six_vertex_sorting,
    strong_immersion_example,
    weak_embedding_pair,
)
from causalnet.minor import (
    Defect,
    cg_moves,
    contraction_moves,
    dualize_defect_lemma,
    find_dual_defect,
    invertible_path_minor,
    is_cg_minor,
    is_contraction_minor,
    is_variant_minor,
    move_closure,
)
from causalnet.morphism import compose, find_isomorphism, iter_morphisms
from causalnet.net import comparable, count_paths, is_complete, is_connected, validate_net

from conftest import LEMMAS, _embedding_options, _quotient_options

# multi-edges make "all nets on n vertices" infinite; the suites cap edges here
SUITE_EDGE_BOUND = 4


def report(n, ok, detail):
    print(f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}")
    return ok


def labels(m):
    return {str(x) for x in classify(m)}


@lru_cache(maxsize=None)
def small_morphisms():
    """Every morphism between nets with at most 3 vertices and 3 edges, with its labels."""
    nets = list(nets_up_to(3, 3))
    return tuple((m, frozenset(labels(m))) for G in nets for H in nets for m in iter_morphisms(G, H))


def simple_nets(max_vertices):
    """One simple net per isomorphism class, vertices numbered along a topological order."""
    seen = set()
    for n in range(max_vertices + 1):
        slots = [(i, j) for i in range(n) for j in range(i + 1, n)]
        for r in range(len(slots) + 1):
            for pairs in combinations(slots, r):
                G = standard_net(n, pairs)
                key = canonical_key(G)
                if key not in seen:
                    seen.add(key)
                    yield G


def test_criterion_1_hom_sets():
    t = time.perf_counter()
    G = X1()
    sizes = {(u, v): count_paths(G, u, v) for u in G.vertices for v in G.vertices if u != v}
    expected = {(u, v): 0 for u, v in sizes}
    expected.update({("v1", "v2"): 2, ("v2", "v3"): 1, ("v1", "v3"): 3})
    elapsed = time.perf_counter() - t
    ok = report(1, sizes == expected and elapsed < 1, f"hom sizes {sizes} in {elapsed:.3f}s")
    assert ok


def test_criterion_2_harmonic_counts():
    t = time.perf_counter()
    counts = {n: len(enumerate_harmonic(n)) for n in (3, 4)}
    unique = {}
    for n in range(1, 6):
        # every acyclic orientation of the complete graph is a complete net; all must be isomorphic
        K = complete_net(n)
        slots = list(combinations(range(n), 2))
        names = [f"x{i}" for i in range(n)]
        classes = []
        for flips in product((False, True), repeat=len(slots)):
            edges = [(f"e{k}", names[j], names[i]) if f else (f"e{k}", names[i], names[j]) for k, ((i, j), f) in enumerate(zip(slots, flips))]
            try:
                G = validate_net(names, edges)
            except CycleFound:
                continue
            if is_complete(G) and not any(find_isomorphism(G, C) for C in classes):
                classes.append(G)
        unique[n] = len(classes) == 1 and find_isomorphism(classes[0], K) is not None
    elapsed = time.perf_counter() - t
    ok = counts == {3: 2, 4: 8} and all(unique.values()) and elapsed < 10
    assert report(2, ok, f"counts {counts}, one complete class per n {unique}, {elapsed:.2f}s")


def test_criterion_3_classification_fixtures():
    t = time.perf_counter()
    q1, s1, im, si = labels(Q1()), labels(S1()), labels(immersion_example()), labels(strong_immersion_example())
    checks = {
        "Q1": {"quotient", "coarse_graining"} <= q1 and "surjection" not in q1,
        "S1": "surjection" in s1 and "coarse_graining" not in s1,
        "immersion": "immersion" in im and "strong" not in im and "weak_embedding" not in im,
        "strong immersion": "strong_immersion" in si,
    }
    elapsed = time.perf_counter() - t
    assert report(3, all(checks.values()) and elapsed < 1, f"{checks} in {elapsed:.3f}s")


def test_criterion_4_decomposition_recomposes():
    t = time.perf_counter()
    failures = defaultdict(list)
    total = 0
    for m, L in small_morphisms():
        for name, factor in THEOREMS.items():
            pre = PRECONDITION[name]
            if pre and pre not in L:
                continue
            total += 1
            try:
                F = factor(m)
                ok = F.recomposes() and F.labels_hold()
                if name == "fundamental":
                    ok = ok and all(fundamental_type(s) is not None for s in F.stages)
            except Exception as exc:  # a factorization that cannot be built counts as a failure
                ok = False
                failures[name].append(f"{m!r}: {type(exc).__name__}")
                continue
            if not ok:
                failures[name].append(repr(m))
    elapsed = time.perf_counter() - t
    summary = {k: len(v) for k, v in failures.items()}
    example = next(iter(failures.values()), [""])[0]
    ok = not failures and elapsed < 300
    assert report(4, ok, f"{total} factorizations, failures {summary} {example} in {elapsed:.1f}s")


def test_criterion_5_epi_mono():
    t = time.perf_counter()
    bad = [(kind, m) for m, _ in small_morphisms() for kind, oracle in (("epi", epi_oracle), ("mono", mono_oracle)) if not oracle(m)]
    elapsed = time.perf_counter() - t
    ok = not bad and elapsed < 300
    assert report(5, ok, f"{len(small_morphisms())} morphisms, {len(bad)} disagreements in {elapsed:.1f}s")


def _suite_coclique():
    """Vertex sets that some merging collapses alone are exactly the cocliques."""
    bad = 0
    for G in nets_up_to(4, SUITE_EDGE_BOUND):
        vs = sorted(G.vertices)
        subsets = [S for r in range(2, len(vs) + 1) for S in combinations(vs, r)]
        cocliques = {S for S in subsets if not any(comparable(G, u, v) for u, v in combinations(S, 2))}
        fibers = set()
        for m in iter_mergings(G):
            nontrivial = [tuple(sorted(b)) for b in m.vertex_preimages().values() if len(b) > 1]
            if len(nontrivial) == 1 and is_a(m, "merging"):
                fibers.add(nontrivial[0])
        bad += cocliques != fibers
    return bad


def _suite_harmonic():
    bad = 0
    for G in simple_nets(5):
        if G.vertices and is_connected(G):
            bad += is_harmonic(G) != harmonic_oracle(G)
    return bad


def _suite_closure(moves, decide):
    nets = list(nets_up_to(4, SUITE_EDGE_BOUND))
    bad = []
    for G in nets:
        reach = move_closure(G, moves)
        for H in nets:
            if (canonical_key(H) in reach) != (decide(H, G) is not None):
                bad.append((H, G))
    return bad


def _suite_topological():
    nets = list(nets_up_to(4, SUITE_EDGE_BOUND))
    bad = []
    for G in nets:
        for H in nets:
            if (is_variant_minor(H, G, "topological") is not None) != (invertible_path_minor(H, G) is not None):
                bad.append((H, G))
    return bad


def test_criterion_6_equivalence_suites():
    suites = {
        "a coclique/merging fiber": lambda: _suite_coclique(),
        "b harmonic/hamiltonian": lambda: _suite_harmonic(),
        "c cg moves/span": lambda: len(_suite_closure(cg_moves, is_cg_minor)),
        "d contraction moves/span": lambda: len(_suite_closure(contraction_moves, is_contraction_minor)),
        "e topological/invertible path": lambda: _suite_topological(),
    }
    results = {}
    ok = True
    for name, suite in suites.items():
        t = time.perf_counter()
        out = suite()
        elapsed = time.perf_counter() - t
        count = out if isinstance(out, int) else len(out)
        detail = f"{count} disagreements in {elapsed:.1f}s"
        if not isinstance(out, int) and out:
            H, G = out[0]
            detail += f", e.g. H={H!r} G={G!r}"
        results[name] = detail
        ok = ok and count == 0 and elapsed < 600
    assert report(6, ok, "; ".join(f"({k}) {v}" for k, v in results.items()))


def _random_net(rnd, max_vertices=4, max_edges=4):
    n = rnd.randint(1, max_vertices)
    pairs = [tuple(sorted(rnd.sample(range(n), 2))) for _ in range(rnd.randint(0, max_edges))] if n > 1 else []
    names = [f"v{i + 1}" for i in range(n)]
    rnd.shuffle(names)
    return validate_net(names, [(f"e{k + 1}", names[i], names[j]) for k, (i, j) in enumerate(pairs)])


def _random_defect(rnd, lemma):
    while True:
        A = _random_net(rnd)
        qs = _quotient_options(A, lemma)
        if not qs:
            continue
        f, args = rnd.choice(qs)
        q = f(*args)
        C = A if lemma in ("merge-span", "parallel-span") else q.cod
        es = _embedding_options(C, lemma)
        if not es:
            continue
        g, gargs = rnd.choice(es)
        return Defect("span" if lemma in ("merge-span", "parallel-span") else "cospan", q, g(*gargs))


def test_criterion_7_dual_defects():
    t = time.perf_counter()
    rnd = random.Random(20240101)
    instances = {lemma: [_random_defect(rnd, lemma) for _ in range(150)] for lemma in LEMMAS}
    S = net("v1 a b v2", "f v1 a", "g b v2")
    instances["merge-span"].append(Defect("span", merge_two_vertices(S, "v1", "v2"), add_edge(S, "a", "b")))
    failures = defaultdict(list)
    for lemma, defects in instances.items():
        for d in defects:
            try:
                if not d.commutes_with(dualize_defect_lemma(d)):
                    failures[lemma].append((d, "square does not commute"))
            except (NoLemmaApplies, QuotientNotAcyclic) as exc:
                failures[lemma].append((d, f"{type(exc).__name__}: {exc}"))
    q, iota = D1()
    d1 = find_dual_defect(Defect("span", q, iota))
    elapsed = time.perf_counter() - t
    summary = {k: len(v) for k, v in failures.items()}
    detail = f"{sum(map(len, instances.values()))} instances, failures {summary}, D1 provably none {d1.provably_none}"
    if failures:
        lemma, ((d, why), *_) = next(iter(failures.items()))
        detail += f"; e.g. {lemma} q={d.q!r} iota={d.iota!r} ({why})"
    ok = not failures and d1.provably_none and elapsed < 120
    assert report(7, ok, f"{detail} in {elapsed:.1f}s")


def _positional(S):
    pos = {v: i for i, v in enumerate(S.order)}
    return len(S.order), tuple(sorted((pos[S.net.ends[e][0]], pos[S.net.ends[e][1]]) for e in S.net.edges))


def test_criterion_8_sorting_nets():
    t = time.perf_counter()
    n_gaps = len(gaps(five_vertex_sorting()))
    condensed = condense(six_vertex_sorting(), 2)
    iso = find_isomorphism(condensed.net, six_vertex_condensed()) is not None
    total = 0
    diverging = []
    for n in range(6):
        slots = [(i, j) for i in range(n) for j in range(i + 1, n)]
        for r in range(len(slots) + 1):
            for pairs in combinations(slots, r):
                G = standard_net(n, pairs)
                S = SortingNet(G, G.vertices)
                total += 1
                if len({_positional(x) for x in all_gap_orders(S)}) > 1:
                    diverging.append(S)
    elapsed = time.perf_counter() - t
    detail = f"five-vertex gaps {n_gaps}, condensation iso {iso}, {len(diverging)}/{total} sorting-nets not confluent"
    if diverging:
        detail += f", e.g. {diverging[0].net!r} order {diverging[0].order}"
    ok = n_gaps == 3 and iso and not diverging and elapsed < 60
    assert report(8, ok, f"{detail} in {elapsed:.1f}s")


def test_criterion_9_closure_and_lattice():
    t = time.perf_counter()
    ms = small_morphisms()
    lattice_bad = 0
    for m, L in ms:
        lattice_bad += sum(1 for a, b in IMPLICATIONS if a in L and b not in L)
        lattice_bad += ("strong_immersion" in L) != ("immersion" in L and "strong" in L)
        lattice_bad += ("isomorphism" in L) != ("quotient" in L and "embedding" in L)
    by_dom = defaultdict(list)
    for m, L in ms:
        by_dom[m.dom].append((m, L))
    closure_bad = defaultdict(int)
    example = {}
    pairs = 0
    for f, Lf in ms:
        for g, Lg in by_dom[f.cod]:
            common = Lf & Lg & set(CLOSED_LABELS)
            if not common:
                continue
            pairs += 1
            h = labels(compose(g, f))
            for lab in common - h:
                closure_bad[lab] += 1
                example.setdefault(lab, (f, g))
    first, second = weak_embedding_pair()
    witness = is_a(first, "weak_embedding") and is_a(second, "weak_embedding") and not is_a(compose(second, first), "weak_embedding")
    elapsed = time.perf_counter() - t
    detail = (
        f"{len(ms)} morphisms, lattice violations {lattice_bad}, {pairs} composable pairs, "
        f"closure failures {dict(closure_bad)}, weak-embedding witness {witness}"
    )
    if example:
        lab, (f, g) = next(iter(example.items()))
        detail += f"; e.g. {lab}: f={f!r} g={g!r}"
    ok = lattice_bad == 0 and not closure_bad and witness and elapsed < 300
    assert report(9, ok, f"{detail} in {elapsed:.1f}s")
