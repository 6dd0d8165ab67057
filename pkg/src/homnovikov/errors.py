class InputError(ValueError):
    """Malformed or inconsistent input data (shapes, literals, grading)."""


class PreconditionError(ValueError):
    """An operation's hypothesis does not hold for the given algebra.

    ``predicate`` names the failed check; ``verdict`` carries its witness.
    """

    def __init__(self, predicate: str, verdict=None, message: str | None = None):
        self.predicate = predicate
        self.verdict = verdict
        detail = message or f"precondition failed: {predicate}"
        if verdict is not None and getattr(verdict, "witness", None) is not None:
            detail += f" (first violation at basis tuple {verdict.witness})"
        super().__init__(detail)


class AxiomError(PreconditionError):
    """Input algebra fails an axiom the operation requires."""
