"""Check reports: structured pass/fail results with exact residues."""

from __future__ import annotations

from dataclasses import dataclass, field

from .scalar import DEFAULT_TOL


@dataclass(frozen=True)
class CheckItem:
    label: str
    passed: bool
    residue: str | None = None
    note: str | None = None

    def to_dict(self):
        out = {"label": self.label, "status": "pass" if self.passed else "fail"}
        if self.residue is not None:
            out["residue"] = self.residue
        if self.note is not None:
            out["note"] = self.note
        return out


@dataclass
class CheckReport:
    identity: str
    items: list[CheckItem] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self):
        return all(it.passed for it in self.items)

    def add(self, label, passed, residue=None, note=None):
        self.items.append(CheckItem(label, passed, residue, note))

    def to_dict(self):
        return {
            "identity": self.identity,
            "status": "pass" if self.passed else "fail",
            "items": [it.to_dict() for it in sorted(self.items, key=lambda i: i.label)],
            "notes": list(self.notes),
        }

    def __repr__(self):
        n_fail = sum(1 for it in self.items if not it.passed)
        state = "pass" if self.passed else f"FAIL ({n_fail}/{len(self.items)})"
        return f"CheckReport({self.identity}: {state})"


def residue_str(scalar):
    return str(scalar)


def phase_item(report, label, residue, tol=DEFAULT_TOL, note=None):
    """Record a mod-2*pi residue check: passes iff residue is a 2*pi multiple.

    residue None means the tested quantity was not even constant.
    """
    if residue is None:
        report.add(label, False, residue="nonconstant", note=note)
        return False
    ok = residue.in_two_pi_Z(tol)
    report.add(label, ok, residue=residue_str(residue.mod_two_pi()), note=note)
    return ok
