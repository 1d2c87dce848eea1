"""The compiled and pure-Python kernels must agree on every input."""

import os
import random
import subprocess
import sys

import pytest

from trsdp import kernels
from trsdp.generate import random_rlo_trs, random_start_term, random_term, random_trs
from trsdp.termtypes import App, Var, positions

BACKENDS = kernels.available_backends()
py = BACKENDS["python"]
cy = BACKENDS.get("cython")
needs_cython = pytest.mark.skipif(cy is None, reason="compiled extension not built")


def _systems(n, seed):
    rng = random.Random(seed)
    for i in range(n):
        R = random_trs(rng) if i % 2 else random_rlo_trs(rng)
        sig = sorted(R.signature, key=lambda s: (s.name, s.arity))
        yield rng, R, [random_start_term(rng, R, 4, ("x", "y")) for _ in range(5)] + (
            [random_term(rng, sig, ("x", "y", "z"), 4) for _ in range(3)] if any(s.arity == 0 for s in sig) else [])


def _norm(found):
    return [(p, i, sorted(b.items(), key=lambda kv: kv[0])) for p, i, b in found]


def test_backend_name():
    assert kernels.BACKEND in ("python", "cython")
    assert py.BACKEND == "python"
    if cy is not None:
        assert cy.BACKEND == "cython"


@pytest.mark.parametrize("env,expected", [("1", "python")])
def test_env_override(env, expected):
    out = subprocess.run(
        [sys.executable, "-c", "import trsdp.kernels as k; print(k.BACKEND)"],
        env={**os.environ, "TRSDP_PURE_PYTHON": env}, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == expected


@needs_cython
def test_default_prefers_compiled():
    env = {k: v for k, v in os.environ.items() if k != "TRSDP_PURE_PYTHON"}
    out = subprocess.run([sys.executable, "-c", "import trsdp.kernels as k; print(k.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "cython"


@needs_cython
def test_redex_kernels_agree():
    checked = 0
    for _rng, R, terms in _systems(150, 11):
        idx, rhss = R.lhs_index, R.rhss
        for t in terms:
            for inner in (False, True):
                assert _norm(py.find_redexes(t, idx, inner)) == _norm(cy.find_redexes(t, idx, inner))
                a = py.successors(t, idx, rhss, inner)
                b = cy.successors(t, idx, rhss, inner)
                assert [(p, i, u) for p, i, _, u in a] == [(p, i, u) for p, i, _, u in b]
            assert py.has_redex(t, idx) == cy.has_redex(t, idx)
            checked += 1
    assert checked > 500


@needs_cython
def test_term_kernels_agree():
    for _rng, R, terms in _systems(100, 12):
        for t in terms:
            for r in R:
                b1, b2 = {}, {}
                assert py.match_into(r.lhs, t, b1) == cy.match_into(r.lhs, t, b2)
                if py.match_into(r.lhs, t, {}):
                    assert b1 == b2
            mapping = {"x": t, "y": Var("z")}
            for u in terms:
                s1, s2 = py.substitute(u, mapping), cy.substitute(u, mapping)
                assert s1 == s2 and hash(s1) == hash(s2)
                for p in positions(u)[:6]:
                    r1, r2 = py.replace_at(u, p, t), cy.replace_at(u, p, t)
                    assert r1 == r2 and hash(r1) == hash(r2)


@needs_cython
def test_substitute_preserves_identity():
    rng = random.Random(3)
    R = random_rlo_trs(rng)
    t = random_start_term(rng, R, 3)
    assert cy.substitute(t, {"nope": Var("q")}) is t
    assert py.substitute(t, {"nope": Var("q")}) is t
