"""Weighted labelled transition systems and state-space partitions.

A WLTS is a finite state set, an observable action alphabet plus one
distinguished silent label, and a weight function into a semiring; weight
zero means "no transition".  States are dense integer ids internally;
documents and the CLI use names.

The document format is JSON-shaped::

    {
      "semiring": {"name": "real"},        # or just "real"; truncation
      "tau": "tau",                        # needs "k", real-float may
      "states": ["s0", "s1"],              # set "epsilon"
      "actions": ["a"],                    # optional, inferred otherwise
      "transitions": [
        {"from": "s0", "label": "a", "to": "s1", "weight": "1/2"}
      ]
    }

Weights are literals of the active semiring ("p/q", "n", "inf", decimals
in float mode, true/false for boolean).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import semiring as _semiring


class DocumentError(Exception):
    """Base class for errors raised while reading a system document."""


class ParseError(DocumentError):
    """The document is structurally malformed (missing/ill-typed fields)."""


class SemanticError(DocumentError):
    """The document is well-formed but inconsistent (bad refs, bad weights)."""


_EMPTY = {}


class WLTS:
    """Immutable weighted LTS over a fixed semiring.

    Constructor transitions are (source_id, label, target_id, weight)
    tuples with already-parsed weights; duplicates are combined with the
    semiring sum and zero-weight entries are dropped (counted in
    ``zero_transitions_dropped``).
    """

    def __init__(self, sr, state_names, actions=(), tau="tau", transitions=()):
        names = tuple(state_names)
        if len(set(names)) != len(names):
            raise SemanticError("duplicate state names")
        acts = tuple(actions)
        if len(set(acts)) != len(acts):
            raise SemanticError("duplicate action names")
        if tau in acts:
            raise SemanticError("silent label %r also declared as an action" % tau)
        self.semiring = sr
        self.tau = tau
        self.state_names = names
        self.actions = acts
        self._index = {s: i for i, s in enumerate(names)}
        succ = [dict() for _ in names]
        labels = set(acts)
        labels.add(tau)
        dropped = 0
        for x, label, y, w in transitions:
            if not (isinstance(x, int) and 0 <= x < len(names)):
                raise SemanticError("bad source state id %r" % (x,))
            if not (isinstance(y, int) and 0 <= y < len(names)):
                raise SemanticError("bad target state id %r" % (y,))
            if label not in labels:
                raise SemanticError("undeclared label %r" % (label,))
            try:
                w = sr.coerce(w)
            except ValueError as exc:
                raise SemanticError(str(exc)) from None
            if sr.is_zero(w):
                dropped += 1
                continue
            row = succ[x].setdefault(label, {})
            if y in row:
                w = sr.add(row[y], w)
            row[y] = w
        self._succ = succ
        self.zero_transitions_dropped = dropped

    # -- basic queries ---------------------------------------------------

    @property
    def state_count(self):
        return len(self.state_names)

    @property
    def labels(self):
        """All labels in canonical order: the silent one first."""
        return (self.tau,) + self.actions

    def index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise SemanticError("unknown state %r" % (name,)) from None

    def successors(self, x, label):
        """Mapping target_id -> weight for the stored (nonzero) steps."""
        return self._succ[x].get(label, _EMPTY)

    def weight(self, x, label, y):
        return self._succ[x].get(label, _EMPTY).get(y, self.semiring.zero)

    def is_terminal(self, x):
        return not any(self._succ[x].values())

    def class_weight(self, x, label, targets):
        """Semiring sum of x's label-steps into the target set."""
        row = self._succ[x].get(label)
        if not row:
            return self.semiring.zero
        if not isinstance(targets, (set, frozenset, dict)):
            targets = set(targets)
        sr = self.semiring
        total = sr.zero
        if len(targets) < len(row):
            for y in targets:
                if y in row:
                    total = sr.add(total, row[y])
        else:
            for y, w in row.items():
                if y in targets:
                    total = sr.add(total, w)
        return total

    def transitions(self):
        """All stored transitions in canonical (source, label, target) order."""
        order = {lab: i for i, lab in enumerate(self.labels)}
        for x in range(self.state_count):
            for label in sorted(self._succ[x], key=order.__getitem__):
                row = self._succ[x][label]
                for y in sorted(row):
                    yield x, label, y, row[y]

    @property
    def transition_count(self):
        return sum(len(row) for succ in self._succ for row in succ.values())

    def __repr__(self):
        return "WLTS(%s, %d states, %d transitions)" % (
            self.semiring.name,
            self.state_count,
            self.transition_count,
        )


# -- documents -------------------------------------------------------------


def _semiring_from_field(value):
    if isinstance(value, str):
        try:
            return _semiring.by_name(value)
        except ValueError as exc:
            raise SemanticError(str(exc)) from None
    if isinstance(value, dict):
        if "name" not in value:
            raise ParseError("semiring object needs a 'name' field")
        params = {k: v for k, v in value.items() if k != "name"}
        try:
            return _semiring.by_name(value["name"], **params)
        except ValueError as exc:
            raise SemanticError(str(exc)) from None
    raise ParseError("semiring field must be a name or an object")


def load(doc, sr=None):
    """Build a WLTS from a parsed document.

    ``sr`` overrides the document's semiring (the CLI --semiring flag);
    weight literals are then parsed under the override.  Zero-weight edges
    are dropped and counted, duplicate edges are combined with the sum.
    """
    if not isinstance(doc, dict):
        raise ParseError("document root must be an object")
    unknown = [k for k in doc if k not in ("semiring", "tau", "states", "actions", "transitions")]
    if unknown:
        # a typo here (say "silent" for "tau") would silently change semantics
        raise ParseError("unknown document field(s): %s" % ", ".join(sorted(unknown)))
    if sr is None:
        if "semiring" not in doc:
            raise ParseError("document lacks a 'semiring' field")
        sr = _semiring_from_field(doc["semiring"])
    tau = doc.get("tau", "tau")
    if not isinstance(tau, str) or not tau:
        raise ParseError("'tau' must be a nonempty string")
    states = doc.get("states")
    if not isinstance(states, list) or not all(isinstance(s, str) for s in states):
        raise ParseError("'states' must be a list of names")
    raw_edges = doc.get("transitions")
    if not isinstance(raw_edges, list):
        raise ParseError("'transitions' must be a list")

    declared = doc.get("actions", [])
    if not isinstance(declared, list) or not all(isinstance(a, str) for a in declared):
        raise ParseError("'actions' must be a list of names")
    actions = list(dict.fromkeys(declared))
    index = {}
    for i, s in enumerate(states):
        if s in index:
            raise SemanticError("duplicate state name %r" % s)
        index[s] = i

    triples = []
    for e in raw_edges:
        if not isinstance(e, dict):
            raise ParseError("each transition must be an object")
        for key in ("from", "label", "to", "weight"):
            if key not in e:
                raise ParseError("transition lacks %r: %r" % (key, e))
        src, label, dst, wtext = e["from"], e["label"], e["to"], e["weight"]
        if not all(isinstance(v, str) for v in (src, label, dst, wtext)):
            raise ParseError("transition fields must be strings: %r" % (e,))
        if src not in index:
            raise SemanticError("transition from unknown state %r" % src)
        if dst not in index:
            raise SemanticError("transition to unknown state %r" % dst)
        if label != tau and label not in actions:
            actions.append(label)
        try:
            w = sr.parse(wtext)
        except ValueError as exc:
            raise SemanticError("bad weight %r: %s" % (wtext, exc)) from None
        triples.append((index[src], label, index[dst], w))

    return WLTS(sr, states, actions, tau, triples)


def serialize(w):
    """Canonical document for a WLTS; load(serialize(w)) reproduces it."""
    edges = [
        {
            "from": w.state_names[x],
            "label": label,
            "to": w.state_names[y],
            "weight": w.semiring.format(wt),
        }
        for x, label, y, wt in w.transitions()
    ]
    return {
        "semiring": w.semiring.describe(),
        "tau": w.tau,
        "states": list(w.state_names),
        "actions": list(w.actions),
        "transitions": edges,
    }


# -- constraint reports -----------------------------------------------------


@dataclass
class MassEntry:
    subject: str
    mass: str
    ok: bool


@dataclass
class MassReport:
    kind: str
    entries: list[MassEntry] = field(default_factory=list)

    @property
    def ok(self):
        return all(e.ok for e in self.entries)


def _require_real(w, what):
    if w.semiring.name not in ("real", "real-float"):
        raise SemanticError(
            "%s is defined over the real semirings, not %r" % (what, w.semiring.name)
        )


def check_fully_probabilistic(w):
    """Per-state total outgoing mass must be 0 (terminal) or 1."""
    _require_real(w, "the fully-probabilistic constraint")
    sr = w.semiring
    report = MassReport(kind="fully-probabilistic")
    for x in range(w.state_count):
        mass = sr.sum(
            wt for label in w.labels for wt in w.successors(x, label).values()
        )
        ok = sr.values_equal(mass, sr.zero) or sr.values_equal(mass, sr.one)
        report.entries.append(MassEntry(w.state_names[x], sr.format(mass), ok))
    return report


def check_reactive(w):
    """Per-state, per-label outgoing mass must be 0 or 1."""
    _require_real(w, "the reactive constraint")
    sr = w.semiring
    report = MassReport(kind="reactive")
    for x in range(w.state_count):
        for label in w.labels:
            row = w.successors(x, label)
            if not row:
                continue
            mass = sr.sum(row.values())
            ok = sr.values_equal(mass, sr.one)
            report.entries.append(
                MassEntry(
                    "%s/%s" % (w.state_names[x], label), sr.format(mass), ok
                )
            )
    return report


# -- partitions --------------------------------------------------------------


class Partition:
    """Partition of {0..n-1} in canonical form.

    Blocks are tuples of ascending state ids, ordered by their minimum
    member; two partitions are equal iff their canonical forms are.
    """

    __slots__ = ("n", "blocks", "_block_of")

    def __init__(self, n, blocks):
        seen = [False] * n
        canon = []
        for block in blocks:
            members = sorted(block)
            if not members:
                raise ValueError("empty block")
            for x in members:
                if not (isinstance(x, int) and 0 <= x < n):
                    raise ValueError("state id %r out of range" % (x,))
                if seen[x]:
                    raise ValueError("state %d in two blocks" % x)
                seen[x] = True
            canon.append(tuple(members))
        if not all(seen):
            missing = [i for i, s in enumerate(seen) if not s]
            raise ValueError("states %s not covered" % missing)
        canon.sort(key=lambda b: b[0])
        self.n = n
        self.blocks = tuple(canon)
        assign = [0] * n
        for bi, block in enumerate(self.blocks):
            for x in block:
                assign[x] = bi
        self._block_of = tuple(assign)

    @classmethod
    def single_block(cls, n):
        return cls(n, [range(n)] if n else [])

    @classmethod
    def discrete(cls, n):
        return cls(n, [[i] for i in range(n)])

    @classmethod
    def from_block_of(cls, assign):
        groups = {}
        for x, b in enumerate(assign):
            groups.setdefault(b, []).append(x)
        return cls(len(assign), groups.values())

    def block_index(self, x):
        return self._block_of[x]

    def block_of(self, x):
        return self.blocks[self._block_of[x]]

    def same_block(self, x, y):
        return self._block_of[x] == self._block_of[y]

    def refines(self, other):
        """True iff every block of self sits inside a block of other."""
        if other.n != self.n:
            raise ValueError("partitions over different state counts")
        return all(
            all(other._block_of[x] == other._block_of[b[0]] for x in b)
            for b in self.blocks
        )

    def to_names(self, w):
        return [[w.state_names[x] for x in block] for block in self.blocks]

    def __len__(self):
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)

    def __eq__(self, other):
        return (
            isinstance(other, Partition)
            and self.n == other.n
            and self.blocks == other.blocks
        )

    def __hash__(self):
        return hash((self.n, self.blocks))

    def __repr__(self):
        return "Partition(%s)" % (list(map(list, self.blocks)),)
