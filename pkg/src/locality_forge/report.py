"""Plain pass/fail reports with witnesses, shared by all verification ops."""


class Report:
    def __init__(self, name, seed=None):
        self.name = name
        self.seed = seed
        self.checks = []       # (check name, passed, witness)
        self.notes = []
        self._finished = False

    def add(self, check, passed, witness=None):
        self.checks.append((check, bool(passed), witness))

    def note(self, text):
        self.notes.append(text)

    def finish(self):
        self._finished = True
        return self

    @property
    def ok(self):
        return all(p for _, p, _ in self.checks)

    @property
    def failures(self):
        return [(c, w) for c, p, w in self.checks if not p]

    def first_witness(self):
        for c, p, w in self.checks:
            if not p:
                return (c, w)
        return None

    def raise_if_failed(self):
        if not self.ok:
            c, w = self.first_witness()
            raise AssertionError("%s failed: %s (witness %r)" % (self.name, c, w))
        return self

    def to_dict(self):
        return {
            "name": self.name,
            "seed": self.seed,
            "ok": self.ok,
            "failures": [{"check": c, "witness": repr(w)} for c, w in self.failures],
            "checks_run": len(self.checks),
            "notes": self.notes,
        }

    def __repr__(self):
        state = "ok" if self.ok else "FAILED(%d)" % len(self.failures)
        return "Report(%s: %s, %d checks)" % (self.name, state, len(self.checks))
