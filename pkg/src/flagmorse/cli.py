"""Command line: build | verify | count | export-dot."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Any, Sequence

from .complex import ComplexStore, Subspace, build_complex, containment
from .counting import permutations, sphere_count_skeleton, stats, f_label
from .field import FieldSpec
from .homology import DEFAULT_PRIMES, betti_all, boundary_squares_to_zero, euler
from .matrix import minimal_matrix_of_flag, random_step_a_basis, word
from .morse import FailureClass, build_matching, partition, verify_matching

log = logging.getLogger("flagmorse")

DEFAULT_GRID = [(2, 2), (2, 5), (3, 2), (3, 3), (4, 2)]
LARGE_GRID = [(5, 2)]

# one color per label class, in lexicographic label order
PALETTE = [
    "cyan3", "darkviolet", "orange", "red3", "springgreen4", "blue3",
    "gold3", "deeppink3", "sienna", "turquoise4", "olivedrab", "slateblue",
]


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    n: int = 3
    q: int = 2
    skeleton: int | None = None
    primes: list[int] = field(default_factory=lambda: list(DEFAULT_PRIMES))
    seed: int = 0
    format: str | None = None
    out: str | None = None
    check: bool = False
    battery: bool = False
    large: bool = False

    def __post_init__(self) -> None:
        try:
            FieldSpec(self.q)
            for p in self.primes:
                FieldSpec(p)
        except (TypeError, ValueError) as exc:
            raise ConfigError(str(exc)) from exc
        if self.n < 2:
            raise ConfigError(f"n must be at least 2, got {self.n}")
        if self.skeleton is not None and self.skeleton < 0:
            raise ConfigError(f"skeleton must be nonnegative, got {self.skeleton}")
        if self.format not in (None, "json", "dot", "text"):
            raise ConfigError(f"unknown format {self.format!r}")


# -- serialization -----------------------------------------------------------


def store_to_dict(store: ComplexStore) -> dict[str, Any]:
    return {
        "n": store.n,
        "q": store.q,
        "skeleton": store.skeleton,
        "vertices": [
            {"id": v.id, "dim": v.dim, "basis": [list(col) for col in v.basis]}
            for v in store.vertices
        ],
        "simplices": {str(d): [list(s) for s in layer] for d, layer in enumerate(store.simplices)},
    }


def store_from_dict(data: dict[str, Any]) -> ComplexStore:
    n, q = data["n"], data["q"]
    vertices = [
        Subspace(v["id"], v["dim"], tuple(tuple(col) for col in v["basis"]))
        for v in data["vertices"]
    ]
    if [v.id for v in vertices] != list(range(len(vertices))):
        raise ValueError("vertex ids must be 0..N-1 in order")
    layers = [
        [tuple(s) for s in data["simplices"][str(d)]]
        for d in range(len(data["simplices"]))
    ]
    return ComplexStore(n, q, data["skeleton"], vertices, layers, containment(vertices, n, q))


def dumps_store(store: ComplexStore) -> str:
    return json.dumps(store_to_dict(store), ensure_ascii=False, separators=(",", ":")) + "\n"


def load_store(path: str | Path) -> ComplexStore:
    return store_from_dict(json.loads(Path(path).read_text(encoding="utf-8")))


def to_dot(store: ComplexStore) -> str:
    """The 1-skeleton with label classes as colors and matched pairs as arrows."""
    part = partition(store)
    matching = build_matching(store, part)
    order = {i: k for k, i in enumerate(permutations(store.n))}
    color = {i: PALETTE[order[i] % len(PALETTE)] for i in part.by_label}
    up_pair = {a: b for a, b in matching.pairs}
    lines = [f'graph "F(GF({store.q})^{store.n})" {{', "  node [style=filled, fontcolor=black];"]
    for v in store.vertices:
        s = (v.id,)
        attrs = [f'label="{v.pretty()}"', f'class="{word(part.label_of[s])}"']
        if s in matching.critical:
            attrs += ["fillcolor=black", "fontcolor=white", "critical=true"]
        else:
            attrs.append(f"fillcolor={color[part.label_of[s]]}")
        lines.append(f"  v{v.id} [{', '.join(attrs)}];")
    edges = store.simplices[1] if store.top_dim >= 1 else []
    for e in edges:
        a, b = e
        attrs = [f"color={color[part.label_of[e]]}", f'class="{word(part.label_of[e])}"']
        if e in matching.critical:
            attrs += ["penwidth=4", "critical=true"]
        elif up_pair.get((b,)) == e:
            a, b = b, a
            attrs.append("dir=forward")
        elif up_pair.get((a,)) == e:
            attrs.append("dir=forward")
        lines.append(f"  v{a} -- v{b} [{', '.join(attrs)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- commands ----------------------------------------------------------------


def _emit(text: str, cfg: RunConfig) -> None:
    if cfg.out:
        Path(cfg.out).write_text(text, encoding="utf-8")
        log.info("wrote %s", cfg.out)
    else:
        sys.stdout.write(text)


def cmd_build(cfg: RunConfig) -> int:
    store = build_complex(cfg.n, cfg.q, cfg.skeleton)
    fmt = cfg.format or "json"
    if fmt == "json":
        _emit(dumps_store(store), cfg)
    elif fmt == "dot":
        _emit(to_dot(store), cfg)
    else:
        _emit(f"F(GF({cfg.q})^{cfg.n}) skeleton={cfg.skeleton} f-vector={store.f_vector()}\n", cfg)
    return 0


def expected_census(n: int, q: int, top: int) -> list[int]:
    """Critical cells per dimension predicted by the closed forms."""
    spheres = sphere_count_skeleton(n, q, top)
    if top == 0:
        return [spheres.count + 1]
    return [1] + [0] * (top - 1) + [spheres.count]


def verify_one(
    n: int, q: int, skeleton: int | None, primes: Sequence[int], seed: int = 0
) -> tuple[list[FailureClass], list[str]]:
    store = build_complex(n, q, skeleton)
    part = partition(store)
    matching = build_matching(store, part)
    report = verify_matching(matching, store, part)
    for s in store.all_simplices():
        chain = store.chain(s)
        resampled = minimal_matrix_of_flag(chain, random_step_a_basis(chain, n, q, seed), q)
        if resampled.label != part.label_of[s]:
            report.add(FailureClass.PARTITION, f"{s}: label depends on the chosen basis (seed {seed})")
    failures = list(report.failures)
    top = store.top_dim
    expected = expected_census(n, q, top)
    observed = matching.critical_by_dim(top)
    if observed != expected:
        failures.append(FailureClass.CENSUS)
    bettis = betti_all(store, primes)
    homology_ok = all(b == expected for b in bettis.values())
    homology_ok &= all(boundary_squares_to_zero(store, p) for p in primes)
    homology_ok &= euler(store) == sum((-1) ** d * c for d, c in enumerate(expected))
    if not homology_ok:
        failures.append(FailureClass.HOMOLOGY)

    title = f"F(GF({q})^{n})" + ("" if skeleton is None else f" skeleton {skeleton}")
    spheres = sphere_count_skeleton(n, q, top)
    rows = [f"{title}: wedge of {spheres.count} S^{spheres.wedge_dim}"]
    head = f"  {'dim':>3} {'expected':>9} {'critical':>9}" + "".join(f" {'b(p=' + str(p) + ')':>12}" for p in primes)
    rows.append(head)
    for d in range(top + 1):
        rows.append(
            f"  {d:>3} {expected[d]:>9} {observed[d]:>9}"
            + "".join(f" {bettis[p][d]:>12}" for p in primes)
        )
    for cls in FailureClass:
        ok = cls not in failures
        rows.append(f"  {cls.name.lower():<11} {'ok' if ok else 'FAIL'}")
        if not ok:
            for msg in report.violations.get(cls, [])[:5]:
                rows.append(f"    {msg}")
    return sorted(set(failures)), rows


def cmd_verify(cfg: RunConfig) -> int:
    if cfg.battery:
        cases = [
            (n, q, k)
            for n, q in DEFAULT_GRID + (LARGE_GRID if cfg.large else [])
            for k in [None, *range(n - 2)]
        ]
    else:
        cases = [(cfg.n, cfg.q, cfg.skeleton)]
    all_failures: set[FailureClass] = set()
    out = []
    for n, q, k in cases:
        failures, rows = verify_one(n, q, k, cfg.primes, cfg.seed)
        all_failures |= set(failures)
        out.extend(rows)
    out.append("ALL PASS" if not all_failures else "FAILED: " + ", ".join(c.name for c in sorted(all_failures)))
    _emit("\n".join(out) + "\n", cfg)
    return int(min(all_failures)) if all_failures else 0


def count_table(n: int, q: int, levels: Sequence[int]) -> dict[str, Any]:
    labels = []
    for i in permutations(n):
        st = stats(i)
        labels.append({"label": word(i), "inv": st.inv, "p": st.p, "j": st.j, "f": f_label(i, q)})
    spheres = [
        {"k": k, "dim": sc.wedge_dim, "count": sc.count}
        for k in levels
        for sc in [sphere_count_skeleton(n, q, k)]
    ]
    return {"n": n, "q": q, "labels": labels, "spheres": spheres}


def cmd_count(cfg: RunConfig) -> int:
    levels = [cfg.skeleton] if cfg.skeleton is not None else list(range(max(cfg.n - 1, 1)))
    table = count_table(cfg.n, cfg.q, levels)
    code = 0
    if cfg.check:
        for row in table["spheres"]:
            store = build_complex(cfg.n, cfg.q, row["k"])
            crit = build_matching(store).critical_by_dim(store.top_dim)
            census = crit[0] - 1 if store.top_dim == 0 else crit[store.top_dim]
            row["census"] = census
            if census != row["count"]:
                code = int(FailureClass.CENSUS)
    if (cfg.format or "text") == "json":
        _emit(json.dumps(table, indent=1) + "\n", cfg)
        return code
    lines = [f"{'label':>8} {'inv':>4} {'p':>3} {'j':>3} {'f':>10}"]
    for r in table["labels"]:
        j = "-" if r["j"] is None else r["j"]
        lines.append(f"{r['label']:>8} {r['inv']:>4} {r['p']:>3} {j:>3} {r['f']:>10}")
    lines.append(f"{'total':>8} {'':>4} {'':>3} {'':>3} {sum(r['f'] for r in table['labels']):>10}")
    for r in table["spheres"]:
        extra = f"  (census {r['census']})" if "census" in r else ""
        lines.append(f"k={r['k']}: wedge of {r['count']} S^{r['dim']}{extra}")
    _emit("\n".join(lines) + "\n", cfg)
    return code


def cmd_export_dot(cfg: RunConfig) -> int:
    k = 1 if cfg.skeleton is None else min(cfg.skeleton, 1)
    _emit(to_dot(build_complex(cfg.n, cfg.q, k)), cfg)
    return 0


COMMANDS = {"build": cmd_build, "verify": cmd_verify, "count": cmd_count, "export-dot": cmd_export_dot}


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="flagmorse", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", help="JSON file with RunConfig keys")
        p.add_argument("--n", type=int)
        p.add_argument("--q", type=int)
        p.add_argument("-k", "--skeleton", "--k", dest="skeleton", type=int)
        p.add_argument("--primes", type=lambda s: [int(x) for x in s.split(",")])
        p.add_argument("--seed", type=int)
        p.add_argument("--format", choices=["json", "dot", "text"])
        p.add_argument("--out")
        p.add_argument("--check", action="store_true", default=None)
        if name == "verify":
            p.add_argument("--battery", action="store_true", default=None)
            p.add_argument("--large", action="store_true", default=None, help="include (5,2) in the battery")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    values: dict[str, Any] = {}
    if args.config:
        values.update(json.loads(Path(args.config).read_text(encoding="utf-8")))
    known = {f.name for f in fields(RunConfig)}
    unknown = set(values) - known
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    for name in known:
        v = getattr(args, name, None)
        if v is not None:
            values[name] = v
    return RunConfig(**values)


def main(argv: Sequence[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        cfg = config_from_args(args)
    except (ConfigError, OSError, json.JSONDecodeError, TypeError) as exc:
        print(f"flagmorse: {exc}", file=sys.stderr)
        return 2
    return COMMANDS[args.command](cfg)


if __name__ == "__main__":
    sys.exit(main())
