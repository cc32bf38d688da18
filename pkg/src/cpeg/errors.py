"""Exception hierarchy shared by the grammar frontend, analyses and engine."""


class CPEGError(Exception):
    """Base class for every error raised by this package."""


class GrammarError(CPEGError):
    """A grammar is structurally invalid (duplicate or undefined rules)."""


class GrammarSyntaxError(GrammarError):
    def __init__(self, message, text="", offset=0):
        self.message = message
        self.offset = offset
        self.line = text.count("\n", 0, offset) + 1
        self.column = offset - (text.rfind("\n", 0, offset) + 1) + 1
        super().__init__(f"line {self.line}, column {self.column}: {message}")


class UnknownNonterminalError(GrammarError, KeyError):
    def __init__(self, name):
        self.name = name
        super().__init__(f"undefined nonterminal: {name}")

    def __str__(self):
        return self.args[0]


class LeftRecursionError(CPEGError):
    def __init__(self, cycles):
        self.cycles = tuple(tuple(c) for c in cycles)
        shown = "; ".join(" -> ".join(c + c[:1]) for c in self.cycles)
        super().__init__(f"left recursion: {shown}")


class WellFormednessError(CPEGError):
    def __init__(self, report):
        self.report = report
        super().__init__("grammar is not well-formed:\n" + report.to_text())


class UnboundTypeVariableError(CPEGError, KeyError):
    def __init__(self, name):
        self.name = name
        super().__init__(f"unbound type variable: {name}")

    def __str__(self):
        return self.args[0]


class UnguardedTypeError(CPEGError):
    def __init__(self, cycle):
        self.cycle = list(cycle)
        super().__init__("unguarded recursion through type variables: "
                         + " -> ".join(self.cycle + self.cycle[:1]))


class ParseDepthError(CPEGError):
    """Evaluation nested deeper than the configured limit."""


class FormatError(CPEGError):
    """Malformed serialized tree or type text."""
