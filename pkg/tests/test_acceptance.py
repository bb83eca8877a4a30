"""End-to-end acceptance checks.

Each test verifies one headline guarantee of the package at its stated
tolerance and prints a single pass/fail line.
"""

import json
import math
import time
from contextlib import contextmanager

import numpy as np
import pytest

from slagverify.config import parse_config
from slagverify.core import AngleClass, cyclic_distance, moment_c2
from slagverify.examples_gen import generate_example
from slagverify.localmodel import (
    FlatSubspace,
    characterizing_angles,
    hk_angles,
    hk_block,
    intersection_type,
    reverse_angles,
    standard_form_restriction,
    v_subspace,
)
from slagverify.obstruction import CalibratedSummand, hl_obstruction
from slagverify.pipeline import classify_all_pairs, report_json, verify_all
from slagverify.quiver import Quiver, betti, boundary_matrix, cycle_cover, edge_removal_profile
from test_local_model import random_orthogonal, random_unit_s2, random_unitary


def stage(report, name):
    for entry in report["stages"]:
        if entry["stage"] == name:
            return entry
    raise KeyError(name)


@contextmanager
def criterion(name):
    try:
        yield
    except BaseException:
        print(f"[FAIL] {name}")
        raise
    print(f"[PASS] {name}")


def run_example(ex_id, **params):
    cfg = parse_config(generate_example(ex_id, **params))
    t0 = time.perf_counter()
    report = verify_all(cfg)
    return cfg, report, time.perf_counter() - t0


def test_projective_example_end_to_end():
    with criterion("projective example: full verification under 1 s"):
        _, report, elapsed = run_example(2)
        assert elapsed < 1.0, f"took {elapsed:.2f} s"
        assert report["ok"], report
        assert report["topology"] == "2ℙ² # 2ℙ̄² # (S¹×S³)"
        assert report["never_hl"] is True


def test_chain_example_small_ranks():
    with criterion("chain example n in {2, 3}: topology, b1 and disjointness"):
        for n in (2, 3):
            cfg, report, elapsed = run_example(1, n=n)
            assert elapsed < 5.0, f"n = {n} took {elapsed:.2f} s"
            assert report["ok"], report
            sup = {2: "²", 3: "³", 5: "⁵"}
            expect = (f"{2 * n}(ℙ¹){sup[n]}"
                      f" # (S¹×S{sup[2 * n - 1]})")
            assert report["topology"] == expect
            assert stage(report, "topology")["b1"] == 1
            assert report["never_hl"] is True
            records = classify_all_pairs(cfg)
            m = 2 * n
            for (na, nb), rec in records.items():
                k = int(na[1:]) - 1
                l = int(nb[1:]) - 1
                far = cyclic_distance(k, l, m) > 1
                assert (rec.kind == "disjoint") == far, (na, nb, rec.kind)


def test_ladder_example_counts():
    with criterion("ladder example N in 1..4: vertex count, h1 and cycle cover"):
        for N in (1, 2, 3, 4):
            cfg, report, elapsed = run_example(3, N=N)
            assert elapsed < 5.0, f"N = {N} took {elapsed:.2f} s"
            assert report["ok"], report
            assert len(cfg.polytopes) == 3 * N + 1
            quiver = stage(report, "quiver")
            assert quiver["h0"] == 1
            assert quiver["h1"] == N
            assert stage(report, "cycle_cover")["status"] == "pass"


def test_angle_oracle_equivalence():
    with criterion("model angles match the generic computation to 1e-9"):
        for n in (1, 2, 3, 4):
            for kp in range(2 * n):
                for km in range(2 * n):
                    tp, tm = AngleClass(kp, n), AngleClass(km, n)
                    if (tm - tp).is_zero_mod_pi():
                        continue
                    res = hk_angles(tp, tm, n)
                    gp = np.kron(np.eye(n), hk_block(tp.radians()))
                    gm = np.kron(np.eye(n), hk_block(tm.radians()))
                    generic = characterizing_angles(gp, gm)
                    assert np.max(np.abs(np.array(res.angles)
                                         - generic.angles)) < 1e-9
                    k = intersection_type(res, 2 * n)
                    assert (k == 1) == (tm - tp == AngleClass(1, n))
                    assert intersection_type(reverse_angles(res), 2 * n) == 2 * n - k


def test_gauge_invariance_of_angles():
    with criterion("angle list is gauge invariant, 200 random trials to 1e-9"):
        rng = np.random.default_rng(101)
        for _ in range(200):
            m = int(rng.integers(2, 9))
            phis = np.sort(rng.uniform(0.03, math.pi - 0.03, size=m))
            k = random_unitary(rng, m)
            gp = k
            gm = np.diag(np.exp(-1j * phis)) @ k
            base = characterizing_angles(gp, gm)
            hp = random_orthogonal(rng, m, 1)
            hm = random_orthogonal(rng, m, int(rng.choice([-1, 1])))
            moved = characterizing_angles(hp @ gp, hm @ gm)
            assert np.max(np.abs(np.array(base.angles) - moved.angles)) < 1e-9
            assert np.max(np.abs(np.array(base.angles) - phis)) < 1e-9


def reachable_oracle(q):
    """Reflexive-transitive closure by boolean matrix squaring."""
    idx = {v: i for i, v in enumerate(q.vertices)}
    nv = len(q.vertices)
    adj = np.eye(nv, dtype=bool)
    for s, t in q.edges:
        adj[idx[s], idx[t]] = True
    for _ in range(max(1, nv.bit_length())):
        adj = adj @ adj
    return adj, idx


def test_random_quiver_corpus():
    with criterion("500 random quivers: exact betti, covers and certificates"):
        rng = np.random.default_rng(211)
        for _ in range(500):
            nv = int(rng.integers(1, 13))
            ne = int(rng.integers(0, 31))
            names = tuple(f"v{i}" for i in range(nv))
            edges = tuple(
                (f"v{int(rng.integers(nv))}", f"v{int(rng.integers(nv))}")
                for _ in range(ne)
            )
            q = Quiver(names, edges)
            h0, h1 = betti(q)
            assert h0 - h1 == nv - ne
            cert = cycle_cover(q)
            closure, idx = reachable_oracle(q)
            for j, (s, t) in enumerate(q.edges):
                on_cycle = bool(closure[idx[t], idx[s]])
                assert cert.edge_covered[j] == on_cycle
            assert cert.covered == (bool(edges) and all(cert.edge_covered))
            if cert.covered:
                mat = np.array(boundary_matrix(q))
                kern = np.array(cert.kernel)
                assert np.all(kern > 0)
                assert np.all(mat @ kern == 0)
                for cyc in cert.cycles:
                    for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                        assert q.edges[a][1] == q.edges[b][0]
            if ne:
                j = int(rng.integers(ne))
                kind, after = edge_removal_profile(q, j)
                assert after == betti(q.drop_edge(j))
                if kind == "bridge-like":
                    assert after[0] == h0 + 1 and after[1] == h1
                else:
                    assert after[0] == h0 and after[1] == h1 - 1


def test_local_model_planes():
    with criterion("invariant planes: moment rays to 1e-9, isotropy to 1e-12"):
        rng = np.random.default_rng(307)
        for _ in range(100):
            n = int(rng.integers(1, 4))
            i = int(rng.integers(n))
            y = random_unit_s2(rng)
            v = v_subspace(i, y, n)
            for _ in range(5):
                vec = v.basis @ rng.standard_normal(v.dim)
                for j in range(n):
                    mom = moment_c2(vec[j], vec[n + j])
                    if j != i:
                        assert np.linalg.norm(mom) < 1e-9
                        continue
                    r = float(mom @ y)
                    assert r > -1e-9
                    assert np.linalg.norm(mom - r * y) < 1e-9
        # half-dimensional sums of aligned factor planes are isotropic
        # for both forms transverse to sigma
        for _ in range(50):
            n = int(rng.integers(1, 4))
            sigma = random_unit_s2(rng)
            signs = rng.choice([-1, 1], size=n)
            cols = np.zeros((2 * n, 2 * n), dtype=complex)
            for j in range(n):
                cols[:, 2 * j:2 * j + 2] = v_subspace(j, signs[j] * sigma, n).basis
            m1, m2 = standard_form_restriction(FlatSubspace(n, cols), sigma)
            assert max(m1, m2) < 1e-12
        # and a misaligned factor breaks the bound
        cols = np.zeros((4, 4), dtype=complex)
        cols[:, :2] = v_subspace(0, [1.0, 0.0, 0.0], 2).basis
        cols[:, 2:] = v_subspace(1, [0.0, 1.0, 0.0], 2).basis
        m1, m2 = standard_form_restriction(FlatSubspace(2, cols), [1.0, 0.0, 0.0])
        assert max(m1, m2) > 1e-3


def test_obstruction_exhaustive():
    with criterion("calibration obstruction: exhaustive check through n = 6"):
        for n in range(1, 7):
            for mask in range(1, 2 ** (2 * n)):
                ks = [k + 1 for k in range(2 * n) if (mask >> k) & 1]
                summands = [
                    CalibratedSummand.from_theta(AngleClass(k, n), n, 1.0)
                    for k in ks
                ]
                # hl_obstruction cross-validates the residue criterion
                # against the closed-form cosine product at 1e-12
                verdict = hl_obstruction(summands, n, eps=1e-12)
                assert verdict.never_hl == (len({k % n for k in ks}) > 1)
            # a family running through every angle k pi / n is never
            # calibrated by a fixed direction (n >= 2)
            if n >= 2:
                full = [CalibratedSummand.from_theta(AngleClass(k, n), n, 1.0)
                        for k in range(1, 2 * n + 1)]
                assert hl_obstruction(full, n, eps=1e-12).never_hl


def test_reports_are_deterministic():
    with criterion("reports byte-identical across runs and lossless as JSON"):
        for ex_id, params in [(2, {}), (1, {"n": 2}), (3, {"N": 2})]:
            cfg = parse_config(generate_example(ex_id, **params))
            a = report_json(verify_all(cfg))
            b = report_json(verify_all(cfg))
            assert a == b
            assert json.loads(a) == verify_all(cfg)
