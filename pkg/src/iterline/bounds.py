"""Closed-form upper bounds on the supereulerian-type and Hamiltonian indices.

All base-2 logarithms of rationals are ceilings computed in integers
(:func:`ceil_lg_ratio`), so powers of two never round the wrong way.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .triangular import ceil_lg_ratio


def ist_bound(delta: int, d_tilde: int, ell: int, s: int, t: int) -> int:
    """Upper bound on the (s,t)-supereulerian index."""
    if s < 0 or t < 0:
        raise ValueError("s and t must be non-negative")
    if delta <= 2:
        if s == t == 0:
            return ell
        return d_tilde + 1 + ceil_lg_ratio(s + t + 1, 1)
    if delta <= s + t + 2:
        return 1 + ceil_lg_ratio(s + t + 1, delta - 2)
    return 1


def hs_bound(delta: int, d_tilde: int, ell: int, s: int) -> int:
    """Upper bound on the s-Hamiltonian index (one more than the (0,s) bound)."""
    if s < 0:
        raise ValueError("s must be non-negative")
    if delta <= 2:
        if s == 0:
            return ell + 1
        return d_tilde + 2 + ceil_lg_ratio(s + 1, 1)
    if delta <= s + 2:
        return 2 + ceil_lg_ratio(s + 1, delta - 2)
    return 2


def prior_bound(ell: int, s: int) -> int:
    """The older linear bound ``ell + s + 1`` on the s-Hamiltonian index."""
    return ell + s + 1


@dataclass
class ComparisonRow:
    s: int
    new: int
    prior: int

    @property
    def difference(self) -> int:
        return self.prior - self.new

    def to_dict(self) -> dict:
        return {"s": self.s, "new": self.new, "prior": self.prior, "difference": self.difference}


def prior_bound_comparison(delta: int, d_tilde: int, ell: int, s_values: range | list[int]) -> list[ComparisonRow]:
    return [ComparisonRow(s, hs_bound(delta, d_tilde, ell, s), prior_bound(ell, s)) for s in s_values]


def comparison_holds(rows: list[ComparisonRow], from_s: int = 6) -> bool:
    """The new bound never exceeds the prior one once ``s >= from_s``."""
    return all(r.new <= r.prior for r in rows if r.s >= from_s)


@dataclass
class BoundRow:
    s: int
    t: int
    ist_bound: int | None
    ist_exact: int | None = None
    hs_bound: int | None = None
    hs_exact: int | None = None
    prior_bound: int | None = None
    cap_hit: bool = False

    def to_dict(self) -> dict:
        def slack(bound: int | None, exact: int | None) -> int | None:
            return None if bound is None or exact is None else bound - exact

        return {
            "s": self.s,
            "t": self.t,
            "ist_bound": self.ist_bound,
            "ist_exact": self.ist_exact,
            "ist_slack": slack(self.ist_bound, self.ist_exact),
            "hs_bound": self.hs_bound,
            "hs_exact": self.hs_exact,
            "hs_slack": slack(self.hs_bound, self.hs_exact),
            "prior_bound": self.prior_bound,
            "cap_hit": self.cap_hit,
        }


@dataclass
class BoundReport:
    graph: str
    delta: int
    d_tilde: int | None
    ell: int
    ell0: int
    rows: list[BoundRow] = field(default_factory=list)

    @property
    def violations(self) -> list[BoundRow]:
        bad = []
        for r in self.rows:
            if r.ist_exact is not None and r.ist_bound is not None and r.ist_exact > r.ist_bound:
                bad.append(r)
            elif r.hs_exact is not None and r.hs_bound is not None and r.hs_exact > r.hs_bound:
                bad.append(r)
        return bad

    def to_dict(self) -> dict:
        return {
            "graph": self.graph,
            "delta": self.delta,
            "d_tilde": self.d_tilde,
            "ell": self.ell,
            "ell0": self.ell0,
            "rows": [r.to_dict() for r in self.rows],
            "violations": len(self.violations),
        }
