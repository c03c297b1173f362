from dataclasses import dataclass, field


@dataclass(frozen=True)
class Verdict:
    """Outcome of a check that reports instead of raising."""

    ok: bool
    failures: tuple = field(default_factory=tuple)
    detail: str = ""

    def __bool__(self):
        return self.ok

    @classmethod
    def from_failures(cls, failures, detail=""):
        failures = tuple(failures)
        return cls(not failures, failures, detail)
