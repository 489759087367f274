"""Link topology: connectivity and the diffeomorphism classification of
simply connected 5-dimensional links via their second Betti number."""

from __future__ import annotations

from dataclasses import dataclass


def connectivity(n: int) -> int:
    """A link arising from n+1 variables is (n-2)-connected."""
    if n < 2:
        raise ValueError("need at least three variables (n >= 2)")
    return n - 2


def connectivity_label(n: int) -> str:
    k = connectivity(n)
    return "simply connected" if k == 1 else f"{k}-connected"


@dataclass(frozen=True)
class LinkClassification:
    """Diffeomorphism-type verdict for a 5-dimensional link.

    A simply connected, spin, torsion-free compact 5-manifold is a connected
    sum of b2 copies of S^2 x S^3 (the empty sum being S^5). Torsion freeness
    is an input assertion: without it no diffeomorphism type is claimed.
    """

    dimension: int
    betti: int
    torsion_free_assumed: bool
    kind: str  # "sphere" | "connected_sum" | "unknown"
    connect_sum_count: int | None = None
    reason: str | None = None
    spin_assumed: bool = True

    @property
    def label(self) -> str:
        if self.kind == "sphere":
            return "S5"
        if self.kind == "connected_sum":
            k = self.connect_sum_count
            return "S2xS3" if k == 1 else f"{k}#(S2xS3)"
        return f"Unknown: {self.reason}"


def classify_5d(b2: int, torsion_free: bool) -> LinkClassification:
    """Classify a simply connected 5-dimensional link by its Betti number."""
    if b2 < 0:
        raise ValueError("Betti number must be non-negative")
    if not torsion_free:
        return LinkClassification(5, b2, False, "unknown", reason="torsion not ruled out")
    if b2 == 0:
        return LinkClassification(5, b2, True, "sphere")
    return LinkClassification(5, b2, True, "connected_sum", connect_sum_count=b2)
