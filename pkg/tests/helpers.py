"""Seeded generators and small transforms shared by the test modules."""

from __future__ import annotations

import random

from cogames import (
    Affine,
    Choice,
    CoSystem,
    GAME,
    Leaf,
    LassoHistory,
    Node,
    Ref,
    STRATEGY,
    alw_leads_to_leaf,
    validate,
)

AGENTS = ("Ann", "Ben", "Cyd")
CHOICES = (Choice.L, Choice.R)


def random_affine(rng: random.Random, parametric: bool = True) -> Affine:
    slope = rng.randint(-3, 3) if parametric else 0
    return Affine(slope, rng.randint(-9, 9))


def random_system(seed: int, kind: str | None = None, max_classes: int = 6,
                  parametric: bool = True, max_shift: int = 2, leaf_bias: float = 0.4) -> CoSystem:
    """Arbitrary valid system: cycles, forward refs, mixed leaves."""
    rng = random.Random(seed)
    kind = kind or rng.choice((GAME, STRATEGY))
    roster = AGENTS[: rng.randint(1, 3)]
    count = rng.randint(1, max_classes)
    classes = []
    for _ in range(count):
        if rng.random() < leaf_bias:
            classes.append(Leaf({a: random_affine(rng, parametric) for a in roster}))
        else:
            shift = (lambda: rng.randint(0, max_shift)) if parametric else (lambda: 0)
            choice = rng.choice(CHOICES) if kind == STRATEGY else None
            classes.append(Node(rng.choice(roster), choice,
                                Ref(rng.randrange(count), shift()),
                                Ref(rng.randrange(count), shift())))
    out = CoSystem(kind, roster, tuple(classes), Ref(rng.randrange(count), 0))
    assert validate(out).holds
    return out


def random_terminating_strategy(seed: int, max_classes: int = 7, parametric: bool = True,
                                max_shift: int = 2) -> CoSystem:
    """Strategy whose chosen child always points at a later class, so
    alw_leads_to_leaf holds by construction (the off-choice child may
    cycle back freely)."""
    rng = random.Random(seed)
    roster = AGENTS[: rng.randint(1, 3)]
    count = rng.randint(2, max_classes)
    shift = (lambda: rng.randint(0, max_shift)) if parametric else (lambda: 0)
    classes = []
    for i in range(count):
        if i == count - 1 or rng.random() < 0.3:
            classes.append(Leaf({a: random_affine(rng, parametric) for a in roster}))
        else:
            forward = Ref(rng.randrange(i + 1, count), shift())
            anywhere = Ref(rng.randrange(count), shift())
            choice = rng.choice(CHOICES)
            left, right = (forward, anywhere) if choice is Choice.L else (anywhere, forward)
            classes.append(Node(rng.choice(roster), choice, left, right))
    out = CoSystem(STRATEGY, roster, tuple(classes), Ref(0, 0))
    assert validate(out).holds and alw_leads_to_leaf(out).holds
    return out


def unrolled_variant(sys: CoSystem, seed: int) -> CoSystem:
    """Duplicate one class and redirect a random subset of references to
    the clone: a syntactically different presentation of the same tree."""
    rng = random.Random(seed)
    victim = rng.randrange(len(sys.classes))
    clone_id = len(sys.classes)

    def maybe(ref: Ref) -> Ref:
        if ref.cls == victim and rng.random() < 0.5:
            return Ref(clone_id, ref.shift)
        return ref

    classes = []
    for cls in sys.classes + (sys.classes[victim],):
        if isinstance(cls, Node):
            classes.append(Node(cls.owner, cls.choice, maybe(cls.left), maybe(cls.right)))
        else:
            classes.append(cls)
    return CoSystem(sys.kind, sys.roster, tuple(classes), maybe(sys.root))


def first_reachable_leaf(sys: CoSystem) -> int | None:
    from cogames import reachable

    for c in reachable(sys):
        if isinstance(sys.classes[c], Leaf):
            return c
    return None


def payoff_mutant(sys: CoSystem, leaf_id: int) -> CoSystem:
    """Bump one intercept of one leaf: a genuinely different tree."""
    leaf = sys.classes[leaf_id]
    assert isinstance(leaf, Leaf)
    agent = sorted(leaf.payoffs)[0]
    payoffs = dict(leaf.payoffs)
    payoffs[agent] = Affine(payoffs[agent].slope, payoffs[agent].intercept + 1)
    classes = list(sys.classes)
    classes[leaf_id] = Leaf(payoffs)
    return CoSystem(sys.kind, sys.roster, tuple(classes), sys.root)


def prefix_perturbation(sys: CoSystem, agent: str, seed: int, depth: int = 2) -> tuple[CoSystem, int]:
    """Unroll the first ``depth`` levels into fresh classes and flip some
    of the agent's choices there.  The fresh classes each stand for a
    single unrolled position, so the result differs from ``sys`` at
    finitely many of the agent's nodes (inductively convertible); all
    other structure is untouched.  Returns (variant, flip count)."""
    rng = random.Random(seed)
    classes = list(sys.classes)
    flips = 0

    def copy(ref: Ref, level: int) -> Ref:
        nonlocal flips
        cls = sys.classes[ref.cls]
        if isinstance(cls, Leaf):
            fresh: Leaf | Node = Leaf({a: f.shifted(ref.shift) for a, f in cls.payoffs.items()})
        elif level >= depth:
            return ref  # splice back into the shared graph
        else:
            left = copy(Ref(cls.left.cls, cls.left.shift + ref.shift), level + 1)
            right = copy(Ref(cls.right.cls, cls.right.shift + ref.shift), level + 1)
            choice = cls.choice
            if cls.owner == agent and choice is not None and rng.random() < 0.5:
                choice = choice.other
                flips += 1
            fresh = Node(cls.owner, choice, left, right)
        classes.append(fresh)
        return Ref(len(classes) - 1, 0)

    root = copy(sys.root, 0)
    return CoSystem(sys.kind, sys.roster, tuple(classes), root), flips


def random_lasso(rng: random.Random, max_prefix: int = 4, max_cycle: int = 3) -> LassoHistory:
    prefix = tuple(rng.choice(CHOICES) for _ in range(rng.randint(0, max_prefix)))
    cycle = tuple(rng.choice(CHOICES) for _ in range(rng.randint(0, max_cycle)))
    return LassoHistory(prefix, cycle)


def finite_corpus(count: int, build, max_size: int = 12, **kwargs) -> list:
    """First ``count`` seeded random trees of total size <= max_size."""
    from cogames import oracle

    out = []
    seed = 0
    while len(out) < count:
        tree = build(seed, **kwargs)
        if oracle.size(tree) <= max_size:
            out.append(tree)
        seed += 1
    return out
