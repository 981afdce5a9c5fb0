import itertools
import random

import pytest

from dkcsp.colorgraph import (
    assignment_distance,
    complete,
    directed_cycle,
    from_edges,
    hypercube,
)
from dkcsp.formula import (
    Constraint,
    Formula,
    brute_force_solve,
    constraint,
    evaluate,
    generate_random,
)
from dkcsp.search import (
    SearchStats,
    det_solve,
    graph_searchball,
    schoening_run,
    schoening_solve,
    searchball,
)


def ball_oracle(f, g, center, r):
    """Exhaustively scan the ball for a satisfying assignment."""
    for point in itertools.product(range(1, f.d + 1), repeat=f.n):
        if assignment_distance(g, center, point) <= r and evaluate(f, point)[0]:
            return point
    return None


def node_bound(k, delta, r):
    return sum((k * delta) ** i for i in range(r + 1))


class TestGraphSearchball:
    def test_already_satisfying(self):
        f = generate_random(5, 3, 3, 4, 0)
        witness = brute_force_solve(f)
        assert witness is not None
        found, stats = graph_searchball(f, complete(3), witness, 3)
        assert found == witness
        assert stats.nodes_visited == 1

    def test_radius_zero_not_satisfying(self):
        f = Formula(2, 3, 2, (constraint((1, 1), (2, 2)),))
        found, stats = graph_searchball(f, complete(3), (1, 2), 0)
        assert found is None
        assert stats.nodes_visited == 1

    def test_branching_count_exact(self):
        # one fully falsified 3-constraint plus an empty constraint: the root
        # spawns exactly k(d-1) children, each a dead leaf
        f = Formula(3, 3, 3, (constraint((1, 1), (2, 1), (3, 1)), Constraint(())))
        found, stats = graph_searchball(f, complete(3), (1, 1, 1), 1)
        assert found is None
        assert stats.nodes_visited == 1 + 3 * 2

    def test_cycle_branching_smaller(self):
        f = Formula(3, 3, 3, (constraint((1, 1), (2, 1), (3, 1)), Constraint(())))
        found, stats = graph_searchball(f, directed_cycle(3), (1, 1, 1), 1)
        assert found is None
        assert stats.nodes_visited == 1 + 3 * 1

    def test_witness_at_exact_radius(self):
        planted = (2, 3, 1, 2)
        f = generate_random(4, 3, 3, 25, 9, planted)
        center = (1, 1, 1, 1)
        g = complete(3)
        r = assignment_distance(g, center, planted)
        found, _ = graph_searchball(f, g, center, r)
        assert found is not None
        assert evaluate(f, found)[0]
        assert assignment_distance(g, center, found) <= r

    @pytest.mark.parametrize(
        "g", [complete(2), complete(3), complete(4), directed_cycle(3), directed_cycle(4), hypercube(2)],
        ids=lambda g: f"{g.name}{g.d}",
    )
    def test_oracle_agreement(self, g):
        rng = random.Random(hash((g.name, g.d)) & 0xFFFF)
        for trial in range(25):
            n = rng.randint(2, 5)
            m = rng.randint(0, 3 * n)
            f = generate_random(n, g.d, min(3, n), m, rng.getrandbits(32))
            center = tuple(rng.randint(1, g.d) for _ in range(n))
            r = rng.randint(0, 3)
            found, stats = graph_searchball(f, g, center, r)
            expected = ball_oracle(f, g, center, r)
            assert (found is None) == (expected is None)
            if found is not None:
                assert evaluate(f, found)[0]
                assert assignment_distance(g, center, found) <= r
            from dkcsp.colorgraph import profile
            assert stats.nodes_visited <= node_bound(f.k, profile(g).delta, r)

    def test_invalid_center(self):
        f = generate_random(3, 3, 2, 2, 0)
        with pytest.raises(ValueError):
            graph_searchball(f, complete(3), (1, 1), 1)
        with pytest.raises(ValueError):
            graph_searchball(f, complete(4), (1, 1, 1), 1)


class TestSearchball:
    def test_equals_complete_graph_search(self):
        rng = random.Random(3)
        for _ in range(20):
            n, d = rng.randint(2, 5), rng.randint(2, 4)
            f = generate_random(n, d, min(3, n), rng.randint(0, 10), rng.getrandbits(32))
            center = tuple(rng.randint(1, d) for _ in range(n))
            r = rng.randint(0, 3)
            a, sa = searchball(f, center, r)
            b, sb = graph_searchball(f, complete(d), center, r)
            assert a == b and sa == sb


class TestSchoeningRun:
    def test_empty_formula_immediate(self):
        f = Formula(4, 3, 2, ())
        witness = schoening_run(f, complete(3), 0, random.Random(0))
        assert witness is not None and len(witness) == 4

    def test_empty_constraint_aborts(self):
        f = Formula(3, 3, 2, (Constraint(()),))
        for seed in range(5):
            assert schoening_run(f, complete(3), 50, random.Random(seed)) is None

    def test_stuck_color_rejected(self):
        g = from_edges(2, [(1, 2)])
        f = generate_random(3, 2, 2, 2, 0)
        with pytest.raises(ValueError, match="out-neighbor"):
            schoening_run(f, g, 10, random.Random(0))

    def test_cycle_walk_distance_deltas(self):
        # re-coloring along the directed cycle moves the distance to any
        # fixed target by exactly -1 or +(d-1) on the changed coordinate
        d = 3
        g = directed_cycle(d)
        rng = random.Random(7)
        f = generate_random(6, d, 3, 150, 21)
        beta = tuple(rng.randint(1, d) for _ in range(6))
        alpha = [rng.randint(1, d) for _ in range(6)]
        from dkcsp.search import _WalkState

        state = _WalkState(f)
        state.reset(alpha)
        deltas = set()
        for _ in range(200):
            ci = state.first_unsat()
            if ci is None:
                break
            lits = f.constraints[ci].literals
            lit = lits[rng.randrange(len(lits))]
            before = assignment_distance(g, tuple(alpha), beta)
            nbrs = g.out[lit.color - 1]
            state.set_color(lit.var, nbrs[rng.randrange(len(nbrs))])
            after = assignment_distance(g, tuple(alpha), beta)
            deltas.add(after - before)
        assert deltas <= {-1, d - 1}
        assert deltas

    def test_deterministic_given_seed(self):
        f = generate_random(6, 3, 3, 10, 4)
        a = schoening_run(f, complete(3), 30, random.Random(12))
        b = schoening_run(f, complete(3), 30, random.Random(12))
        assert a == b


class TestSchoeningSolve:
    def test_planted_found(self):
        planted = tuple(random.Random(5).randint(1, 3) for _ in range(12))
        f = generate_random(12, 3, 3, 30, 17, planted)
        result = schoening_solve(f, complete(3), repetitions=300, rng=1)
        assert result.status == "sat"
        assert evaluate(f, result.assignment)[0]
        assert 1 <= result.stats.repetitions <= 300

    def test_planted_found_on_cycle(self):
        planted = tuple(random.Random(6).randint(1, 3) for _ in range(10))
        f = generate_random(10, 3, 3, 25, 18, planted)
        result = schoening_solve(f, directed_cycle(3), repetitions=400, rng=2)
        assert result.status == "sat"
        assert evaluate(f, result.assignment)[0]

    def test_empty_formula_one_rep(self):
        f = Formula(3, 3, 2, ())
        result = schoening_solve(f, complete(3), repetitions=1, rng=0)
        assert result.status == "sat"

    def test_unsatisfiable_never_sat(self):
        f = Formula(1, 2, 2, (constraint((1, 1)), constraint((1, 2))))
        result = schoening_solve(f, complete(2), repetitions=50, rng=3)
        assert result.status == "unknown"
        assert result.stats.repetitions == 50

    def test_reproducible_across_jobs(self):
        f = generate_random(8, 3, 3, 20, 30)
        a = schoening_solve(f, complete(3), 40, rng=9)
        b = schoening_solve(f, complete(3), 40, rng=9, jobs=2)
        assert a == b


class TestDetSolve:
    @pytest.mark.parametrize("gname", ["complete", "cycle"])
    def test_oracle_equivalence_small(self, gname):
        rng = random.Random(100 if gname == "complete" else 200)
        for _ in range(60):
            n = rng.randint(2, 7)
            d = rng.randint(2, 4)
            k = rng.randint(2, min(3, n))
            m = rng.randint(0, 25)
            planted = None
            if rng.random() < 0.5:
                planted = tuple(rng.randint(1, d) for _ in range(n))
            f = generate_random(n, d, k, m, rng.getrandbits(32), planted)
            g = complete(d) if gname == "complete" else directed_cycle(d)
            result = det_solve(f, g, block_cap=4096)
            oracle = brute_force_solve(f)
            assert (result.status == "sat") == (oracle is not None)
            if result.status == "sat":
                assert evaluate(f, result.assignment)[0]

    def test_oracle_equivalence_hypercube(self):
        rng = random.Random(300)
        g = hypercube(2)
        for _ in range(25):
            n = rng.randint(2, 5)
            f = generate_random(n, 4, 2, rng.randint(0, 40), rng.getrandbits(32))
            result = det_solve(f, g, block_cap=1024)
            oracle = brute_force_solve(f)
            assert (result.status == "sat") == (oracle is not None)
            if result.status == "sat":
                assert evaluate(f, result.assignment)[0]

    def test_schoening_on_hypercube(self):
        planted = tuple(random.Random(8).randint(1, 4) for _ in range(8))
        f = generate_random(8, 4, 3, 30, 19, planted)
        result = schoening_solve(f, hypercube(2), repetitions=500, rng=4)
        assert result.status == "sat"
        assert evaluate(f, result.assignment)[0]

    def test_empty_formula_first_codeword(self):
        f = Formula(4, 3, 3, ())
        result = det_solve(f, directed_cycle(3), block_cap=81)
        assert result.status == "sat"
        assert result.stats.balls_searched == 1
        assert result.stats.nodes_visited == 1

    def test_empty_constraint_unsat(self):
        f = Formula(3, 3, 2, (Constraint(()),))
        result = det_solve(f, complete(3), block_cap=27)
        assert result.status == "unsat"

    def test_deterministic_including_stats(self):
        f = generate_random(6, 3, 3, 14, 77)
        a = det_solve(f, directed_cycle(3), block_cap=729)
        b = det_solve(f, directed_cycle(3), block_cap=729)
        assert a == b

    def test_reproducible_across_jobs(self):
        f = generate_random(7, 3, 2, 18, 55)
        a = det_solve(f, complete(3), block_cap=2187)
        b = det_solve(f, complete(3), block_cap=2187, jobs=2)
        assert a == b

    def test_color_count_mismatch_rejected(self):
        f = generate_random(4, 4, 2, 5, 1)
        with pytest.raises(ValueError, match="colors"):
            det_solve(f, complete(3), block_cap=81)

    def test_node_bound_per_ball(self):
        from dkcsp.colorgraph import profile
        from dkcsp.covercode import build_code

        rng = random.Random(14)
        for g in (complete(3), directed_cycle(3)):
            for _ in range(10):
                f = generate_random(6, 3, 3, rng.randint(0, 20), rng.getrandbits(32))
                code = build_code(g, 6, 3, 729)
                result = det_solve(f, g, block_cap=729)
                bound = node_bound(3, profile(g).delta, code.radius)
                assert result.stats.max_ball_nodes <= bound
