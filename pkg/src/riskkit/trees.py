"""Scenario trees and stage-consistent risk evaluation.

A scenario tree is a fixed-policy view of a sequential problem: nodes
carry deterministic stage costs, edges carry transition probabilities,
and every root-to-leaf path is one outcome whose cost is the sum of the
stage costs along it.  Two assessments of the same tree are provided:

* ``static_eval`` applies a metric once to the total-cost distribution,
  viewing the whole future from the root;
* ``compounded_eval`` folds a one-step metric backward through the
  tree, so each node's value depends only on its own subtree.

The two can disagree in kind, not just in size: the bundled
``time_inconsistency_example`` is acceptable at every first-stage node
under a 2/3-level tail mean, yet unacceptable statically from the root.
``check_local_property`` and ``check_time_consistency`` are seeded
falsifiers for the two stage-consistency properties.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterator, Optional, Tuple, Union

import numpy as np

from .audit import VIOLATION_TOL
from .metrics import MetricSpec, evaluate
from .probability import PROB_SUM_TOL, CostRandomVariable, ProbabilitySpace

MAX_TREE_DEPTH = 16
MAX_BRANCHING = 16

LOCAL_TOL = 1e-9
"""A node value moving more than this under outside perturbations is flagged."""

NO_VIOLATION = "no-violation-found"
VIOLATED = "violated"

DISTORTION_KINDS = frozenset({"expected", "worst_case", "cvar", "mixture"})
"""Metric kinds accepted as one-step metrics in the backward fold."""

Path = Tuple[int, ...]


@dataclass(frozen=True, eq=False)
class TreeNode:
    """One stage: a deterministic cost plus (probability, child) branches."""

    cost: float
    children: Tuple[Tuple[float, "TreeNode"], ...] = ()

    @property
    def is_leaf(self) -> bool:
        return not self.children


@dataclass(frozen=True, eq=False)
class ScenarioTree:
    """Validated rooted tree with all leaves at the same depth.

    Construction rejects nonfinite costs, negative transition
    probabilities, probability sums off by more than ``PROB_SUM_TOL``,
    ragged horizons, and trees deeper than ``MAX_TREE_DEPTH`` or wider
    than ``MAX_BRANCHING``; accepted probability drift is renormalized
    so each node's branches sum to exactly 1.  Depth (number of stages
    past the root) is at least 1.
    """

    root: TreeNode

    def __post_init__(self):
        leaf_depths = set()

        def rebuild(node: TreeNode, depth: int) -> TreeNode:
            cost = float(node.cost)
            if not np.isfinite(cost):
                raise ValueError("stage costs must be finite")
            if node.is_leaf:
                leaf_depths.add(depth)
                return TreeNode(cost)
            if depth >= MAX_TREE_DEPTH:
                raise ValueError(f"tree deeper than {MAX_TREE_DEPTH} stages")
            if len(node.children) > MAX_BRANCHING:
                raise ValueError(f"more than {MAX_BRANCHING} branches at one node")
            probs = np.array([p for p, _ in node.children], dtype=float)
            if not np.all(np.isfinite(probs)) or np.any(probs < 0):
                raise ValueError("transition probabilities must be finite and >= 0")
            total = float(probs.sum())
            if abs(total - 1.0) > PROB_SUM_TOL:
                raise ValueError(
                    f"transition probabilities at a node sum to {total!r}, not 1"
                )
            probs /= total
            return TreeNode(
                cost,
                tuple(
                    (float(p), rebuild(child, depth + 1))
                    for p, (_, child) in zip(probs, node.children)
                ),
            )

        root = rebuild(self.root, 0)
        if len(leaf_depths) > 1:
            raise ValueError(f"all leaves must share one depth, got {sorted(leaf_depths)}")
        depth = leaf_depths.pop()
        if depth < 1:
            raise ValueError("tree must have at least one stage below the root")
        object.__setattr__(self, "root", root)
        object.__setattr__(self, "_depth", depth)

    @property
    def depth(self) -> int:
        return self._depth

    def node_at(self, path: Path) -> TreeNode:
        node = self.root
        for i in path:
            if node.is_leaf or not 0 <= i < len(node.children):
                raise ValueError(f"no node at path {path!r}")
            node = node.children[i][1]
        return node

    def node_paths(self) -> Iterator[Tuple[Path, TreeNode]]:
        """All (path, node) pairs in depth-first preorder."""

        def walk(node, path):
            yield path, node
            for i, (_, child) in enumerate(node.children):
                yield from walk(child, path + (i,))

        yield from walk(self.root, ())

    def map_costs(self, fn: Callable[[Path, float], float]) -> "ScenarioTree":
        """New tree with each stage cost replaced by ``fn(path, cost)``."""

        def walk(node, path):
            return TreeNode(
                fn(path, node.cost),
                tuple(
                    (p, walk(child, path + (i,)))
                    for i, (p, child) in enumerate(node.children)
                ),
            )

        return ScenarioTree(walk(self.root, ()))

    @classmethod
    def from_json(cls, obj: dict) -> "ScenarioTree":
        """Build from nested ``{"cost": c, "children": [{"p": p, "node": ...}]}``."""

        def parse(o) -> TreeNode:
            if not isinstance(o, dict) or "cost" not in o:
                raise ValueError('tree node JSON must be an object with a "cost" key')
            extra = set(o) - {"cost", "children"}
            if extra:
                raise ValueError(f"unexpected tree node keys {sorted(extra)}")
            children = []
            for edge in o.get("children", []):
                if not isinstance(edge, dict) or set(edge) != {"p", "node"}:
                    raise ValueError('tree edge JSON must have keys "p" and "node"')
                children.append((float(edge["p"]), parse(edge["node"])))
            return TreeNode(float(o["cost"]), tuple(children))

        return cls(parse(obj))

    def to_json(self) -> dict:
        def dump(node):
            out = {"cost": node.cost}
            if node.children:
                out["children"] = [
                    {"p": p, "node": dump(child)} for p, child in node.children
                ]
            return out

        return dump(self.root)


def _leaf_atoms(node: TreeNode):
    """(probability, summed cost) of every root-to-leaf path under ``node``."""
    if node.is_leaf:
        return [(1.0, node.cost)]
    out = []
    for p, child in node.children:
        for q, cost in _leaf_atoms(child):
            out.append((p * q, node.cost + cost))
    return out


def total_cost_distribution(tree: ScenarioTree) -> CostRandomVariable:
    """Cost variable over root-to-leaf paths.

    Each path is one outcome; its probability is the product of edge
    probabilities and its cost the sum of stage costs along the path.
    """
    atoms = _leaf_atoms(tree.root)
    return CostRandomVariable(
        ProbabilitySpace([p for p, _ in atoms]), [c for _, c in atoms]
    )


def static_eval(tree: ScenarioTree, spec: MetricSpec) -> float:
    """Apply a metric once to the tree's total-cost distribution."""
    return evaluate(spec, total_cost_distribution(tree))


def _compound(node: TreeNode, one_step: MetricSpec, values: Optional[dict], path: Path):
    if node.is_leaf:
        value = node.cost
    else:
        child_values = [
            _compound(child, one_step, values, path + (i,))
            for i, (_, child) in enumerate(node.children)
        ]
        step_rv = CostRandomVariable(
            ProbabilitySpace([p for p, _ in node.children]), child_values
        )
        value = node.cost + evaluate(one_step, step_rv)
    if values is not None:
        values[path] = value
    return value


def _require_distortion(one_step: MetricSpec) -> None:
    if one_step.kind not in DISTORTION_KINDS:
        raise ValueError(
            f"one-step metric must be one of {sorted(DISTORTION_KINDS)}, "
            f"got {one_step.kind!r}"
        )


def compounded_eval(tree: ScenarioTree, one_step: MetricSpec):
    """Backward fold of a one-step metric through the tree.

    A leaf is worth its stage cost; an internal node is worth its stage
    cost plus the one-step metric of its children's values under the
    transition probabilities.  Returns ``(root value, per-node values)``
    with the map keyed by child-index paths.  Each node's value depends
    only on its own subtree.
    """
    _require_distortion(one_step)
    values: dict = {}
    root_value = _compound(tree.root, one_step, values, ())
    return root_value, values


def time_inconsistency_example() -> ScenarioTree:
    """Two-stage tree on which static and compounded tail views disagree.

    The root splits evenly into a risky node (terminal costs 1 and -3,
    equally likely) and a calm node (terminal costs 0 and 0); all stage
    costs are zero.  At tail level 2/3 both first-stage nodes assess to
    0, and the compounded root value is 0; but the static root
    assessment of the total cost is 0.375 > 0, flagging a tree whose
    every continuation is acceptable.
    """
    risky = TreeNode(0.0, ((0.5, TreeNode(1.0)), (0.5, TreeNode(-3.0))))
    calm = TreeNode(0.0, ((0.5, TreeNode(0.0)), (0.5, TreeNode(0.0))))
    return ScenarioTree(TreeNode(0.0, ((0.5, risky), (0.5, calm))))


@dataclass(frozen=True)
class CompoundedEvaluator:
    """Tail values by backward-folding a one-step metric over subtrees."""

    one_step: MetricSpec

    def __post_init__(self):
        _require_distortion(self.one_step)

    def tail_value(self, tree: ScenarioTree, path: Path = ()) -> float:
        return _compound(tree.node_at(path), self.one_step, None, path)


@dataclass(frozen=True)
class StaticTailEvaluator:
    """Tail values by applying a static metric to each subtree's total cost."""

    spec: MetricSpec

    def tail_value(self, tree: ScenarioTree, path: Path = ()) -> float:
        atoms = _leaf_atoms(tree.node_at(path))
        rv = CostRandomVariable(
            ProbabilitySpace([p for p, _ in atoms]), [c for _, c in atoms]
        )
        return evaluate(self.spec, rv)


@dataclass(frozen=True)
class _CallableEvaluator:
    fn: Callable[[ScenarioTree, Path], float]

    def tail_value(self, tree: ScenarioTree, path: Path = ()) -> float:
        return self.fn(tree, path)


Evaluator = Union[MetricSpec, CompoundedEvaluator, StaticTailEvaluator, Callable]


def _coerce_evaluator(evaluator: Evaluator):
    if isinstance(evaluator, MetricSpec):
        return CompoundedEvaluator(evaluator)
    if hasattr(evaluator, "tail_value"):
        return evaluator
    if callable(evaluator):
        return _CallableEvaluator(evaluator)
    raise TypeError(f"cannot interpret {evaluator!r} as a tail evaluator")


def random_tree(
    rng: np.random.Generator, max_depth: int = 4, max_branching: int = 3
) -> ScenarioTree:
    """Random uniform-horizon tree with costs drawn uniform in [-10, 10]."""
    depth = int(rng.integers(1, max_depth + 1))

    def build(level: int) -> TreeNode:
        cost = float(rng.uniform(-10.0, 10.0))
        if level == depth:
            return TreeNode(cost)
        width = int(rng.integers(1, max_branching + 1))
        probs = rng.random(width) + 0.05
        probs /= probs.sum()
        return TreeNode(cost, tuple((float(p), build(level + 1)) for p in probs))

    return ScenarioTree(build(0))


@dataclass(frozen=True)
class LocalPropertyResult:
    """Outcome of perturbing costs outside one node's subtree.

    ``max_node_delta`` is how far the node's own value moved (flagged
    beyond ``LOCAL_TOL``); ``static_root_delta`` shows, for contrast,
    how far the naive whole-tree static assessment moved under the same
    perturbations (``None`` when no underlying metric spec is known).
    """

    verdict: str
    node_path: Path
    max_node_delta: float
    static_root_delta: Optional[float]
    trials: int
    seed: int
    counterexample: Optional[ScenarioTree] = None

    @property
    def violated(self) -> bool:
        return self.verdict == VIOLATED


def check_local_property(
    tree: ScenarioTree,
    evaluator: Evaluator,
    node_path: Path,
    trials: int = 100,
    seed: int = 0,
) -> LocalPropertyResult:
    """Randomly perturb costs outside a node's subtree; its value must hold.

    ``node_path`` must name an internal node.  Every stage cost outside
    the node's subtree (ancestors included) is shifted by an independent
    uniform [-10, 10] draw per trial.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    node = tree.node_at(node_path)
    if node.is_leaf:
        raise ValueError(f"node {node_path!r} is a leaf; pick an internal node")
    ev = _coerce_evaluator(evaluator)
    spec = getattr(ev, "one_step", None) or getattr(ev, "spec", None)
    rng = np.random.default_rng([101, seed])

    def in_subtree(path: Path) -> bool:
        return len(path) >= len(node_path) and path[: len(node_path)] == node_path

    outside = [p for p, _ in tree.node_paths() if not in_subtree(p)]
    base_value = ev.tail_value(tree, node_path)
    base_static = None if spec is None else static_eval(tree, spec)
    max_node_delta = 0.0
    max_static_delta = None if spec is None else 0.0
    witness = None
    for _ in range(trials):
        shifts = {p: float(rng.uniform(-10.0, 10.0)) for p in outside}
        perturbed = tree.map_costs(lambda p, c: c + shifts.get(p, 0.0))
        delta = abs(ev.tail_value(perturbed, node_path) - base_value)
        if delta > max_node_delta:
            max_node_delta = delta
            if delta > LOCAL_TOL:
                witness = perturbed
        if spec is not None:
            max_static_delta = max(
                max_static_delta, abs(static_eval(perturbed, spec) - base_static)
            )
    verdict = VIOLATED if max_node_delta > LOCAL_TOL else NO_VIOLATION
    return LocalPropertyResult(
        verdict, tuple(node_path), max_node_delta, max_static_delta, trials, seed,
        witness,
    )


@dataclass(frozen=True)
class TimeConsistencyCounterexample:
    """Pair of cost assignments ordered at step ``step`` but not at the root.

    The two trees share shape and transition probabilities, and agree on
    all costs before ``step``.  Tail values at every step-``step`` node
    satisfy ``tail <= other_tail``, yet ``root_value > other_root_value``.
    """

    tree: ScenarioTree
    other_tree: ScenarioTree
    step: int
    tail_values: tuple
    other_tail_values: tuple
    root_value: float
    other_root_value: float


@dataclass(frozen=True)
class TimeConsistencyResult:
    verdict: str
    trials: int
    seed: int
    counterexample: Optional[TimeConsistencyCounterexample] = None

    @property
    def violated(self) -> bool:
        return self.verdict == VIOLATED


_PREMISE_SLACK = 1e-12


def check_time_consistency(
    evaluator: Evaluator,
    trials: int = 1000,
    seed: int = 0,
    max_depth: int = 4,
    max_branching: int = 3,
) -> TimeConsistencyResult:
    """Hunt for stage-ordered cost pairs whose root ordering flips.

    Deterministic candidates are tried first: the bundled
    two-stage example against its zero-cost twin, in both orders.  Then
    random trees are paired with copies whose costs at stages >= k
    received nonnegative increments.  A pair counts only if the tail
    values at every step-``k`` node are actually ordered under the
    evaluator (the premise); a violation is a root ordering flipped
    beyond the scaled tolerance.

    A :class:`MetricSpec` is folded backward (compounded); pass a
    :class:`StaticTailEvaluator` to test the naive static assessment,
    which this check flags via the deterministic witness.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    ev = _coerce_evaluator(evaluator)
    rng = np.random.default_rng([202, seed])
    base = time_inconsistency_example()
    zero = base.map_costs(lambda p, c: 0.0)

    def randomized():
        for _ in range(trials):
            tree = random_tree(rng, max_depth, max_branching)
            k = int(rng.integers(1, tree.depth + 1))

            def bump(path, cost):
                if len(path) >= k and rng.random() < 0.7:
                    return cost + float(rng.uniform(0.0, 5.0))
                return cost

            yield tree, tree.map_costs(bump), k

    candidates = itertools.chain([(base, zero, 1), (zero, base, 1)], randomized())
    for tree, other, k in candidates:
        k_paths = [p for p, _ in tree.node_paths() if len(p) == k]
        tails = [ev.tail_value(tree, p) for p in k_paths]
        other_tails = [ev.tail_value(other, p) for p in k_paths]
        premise = all(
            a <= b + _PREMISE_SLACK * (1.0 + max(abs(a), abs(b)))
            for a, b in zip(tails, other_tails)
        )
        if not premise:
            continue
        root = ev.tail_value(tree, ())
        other_root = ev.tail_value(other, ())
        if root - other_root > VIOLATION_TOL * (1.0 + max(abs(root), abs(other_root))):
            cx = TimeConsistencyCounterexample(
                tree, other, k, tuple(tails), tuple(other_tails), root, other_root
            )
            return TimeConsistencyResult(VIOLATED, trials, seed, cx)
    return TimeConsistencyResult(NO_VIOLATION, trials, seed, None)
