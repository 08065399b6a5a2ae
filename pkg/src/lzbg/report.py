from dataclasses import asdict, dataclass
from typing import Optional

INT_BYTES = 4


def modeled_bytes(variant: str, n: int, s_max: Optional[int] = None) -> Optional[int]:
    """Working-space model with 4-byte integers, text included.

    Stack variants: text + SA + ISA + PSV + NSV + stack. Lexicographic peak
    elimination drops the stack. Text-order variants keep only the text,
    Phi, PSV and NSV.
    """
    kind = variant[-1].upper()
    if kind == "S":
        return 17 * n + INT_BYTES * (s_max or 0)
    if kind == "L":
        return 17 * n
    if kind == "T":
        return 13 * n
    return None


@dataclass
class RunReport:
    variant: str
    n_text: int
    n_factors: int
    s_max: Optional[int]
    comparisons: int
    modeled_bytes: Optional[int]
    actual_peak_bytes: Optional[int]
    sa_build_seconds: float
    post_sa_seconds: float
    repeats: int = 1
    pushes: int = 0
    eliminations: int = 0

    def as_dict(self):
        return asdict(self)

    def summary(self) -> str:
        parts = [
            f"variant={self.variant}",
            f"N={self.n_text}",
            f"factors={self.n_factors}",
            f"comparisons={self.comparisons}",
        ]
        if self.s_max is not None:
            parts.append(f"s_max={self.s_max}")
        if self.modeled_bytes is not None:
            parts.append(f"modeled_bytes={self.modeled_bytes}")
        parts.append(f"sa_build={self.sa_build_seconds:.4f}s")
        parts.append(f"post_sa={self.post_sa_seconds:.4f}s")
        return " ".join(parts)
