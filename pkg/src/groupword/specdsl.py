"""The group-spec mini language used by the CLI.

Grammar:
    sym:N | alt:N | cyc:N | dih:N | sl2:Q | psl2:Q | pgl2:Q | pgammal2:Q
  | prod(spec,spec) | wreath(base,N,top) | regular(spec)
  | perm:N:gen;gen;...        (1-based disjoint cycle notation)
  | hadamard:K | ex35:M

wreath() builds the block permutation action when the base is a permutation
group (the engine that scales to the 60^6 fixture) and the enumerated wreath
otherwise.
"""

from __future__ import annotations

from .errors import Unsupported
from .groups import (
    GroupHandle,
    alt_group,
    cyclic_group,
    dihedral_group,
    direct_product,
    pgammal2_group,
    pgl2_group,
    perm_group,
    psl2_group,
    regular_rep,
    sl2_group,
    sym_group,
    wreath_enum,
    wreath_perm,
)
from .perms import parse_cycles


def _split_top_level(text: str, sep: str = ",") -> list[str]:
    parts = []
    depth = 0
    cur = []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ValueError(f"unbalanced parentheses in {text!r}")
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if depth != 0:
        raise ValueError(f"unbalanced parentheses in {text!r}")
    parts.append("".join(cur))
    return parts


def parse_group_spec(spec: str) -> GroupHandle:
    spec = spec.strip()
    if not spec:
        raise ValueError("empty group spec")
    for head in ("prod", "wreath", "regular"):
        if spec.startswith(head + "(") and spec.endswith(")"):
            inner = spec[len(head) + 1 : -1]
            args = [a.strip() for a in _split_top_level(inner)]
            if head == "prod":
                if len(args) != 2:
                    raise ValueError("prod takes two specs")
                return direct_product(parse_group_spec(args[0]),
                                      parse_group_spec(args[1]))
            if head == "regular":
                if len(args) != 1:
                    raise ValueError("regular takes one spec")
                return regular_rep(parse_group_spec(args[0]))
            if len(args) != 3:
                raise ValueError("wreath takes (base, N, top)")
            base = parse_group_spec(args[0])
            n = int(args[1])
            top = parse_group_spec(args[2])
            if base.is_perm_group():
                return wreath_perm(base, n, top)
            return wreath_enum(base, n, top)
    head, _, rest = spec.partition(":")
    if head == "sym":
        return sym_group(int(rest))
    if head == "alt":
        return alt_group(int(rest))
    if head == "cyc":
        return cyclic_group(int(rest))
    if head == "dih":
        return dihedral_group(int(rest))
    if head == "sl2":
        return sl2_group(int(rest))
    if head == "psl2":
        return psl2_group(int(rest))
    if head == "pgl2":
        return pgl2_group(int(rest))
    if head == "pgammal2":
        return pgammal2_group(int(rest))
    if head == "hadamard":
        from .permstat import hadamard_perm_group

        return hadamard_perm_group(int(rest))
    if head == "ex35":
        from .permstat import dihedral_subdirect_power

        return dihedral_subdirect_power(int(rest))
    if head == "perm":
        degree_str, _, gens_str = rest.partition(":")
        degree = int(degree_str)
        gens = [parse_cycles(g, degree) for g in gens_str.split(";") if g.strip()]
        return perm_group(degree, gens, name=spec)
    raise ValueError(f"unknown group spec {spec!r}")


def parse_outer_spec(simple_spec: str, outer: str):
    """Outer-class label from CLI text: 'e,t' for psl2, '0'/'1' for alt."""
    kind = simple_spec.partition(":")[0]
    outer = outer.strip()
    if kind == "psl2":
        parts = outer.split(",")
        if len(parts) != 2:
            raise ValueError("psl2 outer classes are 'eps,t'")
        return (int(parts[0]), int(parts[1]))
    if kind == "alt":
        return int(outer)
    raise Unsupported(f"no outer classes for {simple_spec!r}")
