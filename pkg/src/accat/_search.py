"""Iterative backtracking over ordered variables.

Every exhaustive search in the package (functors, isomorphisms, lifts,
retractions) is phrased as a list of variables, a domain function that may
look at earlier assignments, and checks attached to the variable that
completes them.  The loop is iterative so deep searches (hundreds of
variables for the larger generator posets) do not hit the recursion limit.
"""

from __future__ import annotations

from typing import Callable, Hashable, Iterable, Iterator, Mapping, Sequence

from .errors import SearchBudgetExceeded

DEFAULT_BUDGET = 2_000_000

Assignment = dict
Check = Callable[[Assignment], bool]


class Budget:
    """Node counter shared between several searches."""

    def __init__(self, limit: int = DEFAULT_BUDGET):
        self.limit = limit
        self.used = 0

    def spend(self, n: int = 1) -> None:
        self.used += n
        if self.used > self.limit:
            raise SearchBudgetExceeded(self.limit)


def as_budget(budget) -> Budget:
    if isinstance(budget, Budget):
        return budget
    return Budget(DEFAULT_BUDGET if budget is None else int(budget))


def backtrack(
    variables: Sequence[Hashable],
    domain: Callable[[Hashable, Assignment], Iterable],
    checks: Mapping[Hashable, Sequence[Check]],
    budget=None,
) -> Iterator[Assignment]:
    """Yield every complete assignment passing all checks, in domain order."""
    budget = as_budget(budget)
    n = len(variables)
    if n == 0:
        yield {}
        return
    assignment: Assignment = {}
    stack = [iter(domain(variables[0], assignment))]
    depth = 0
    while depth >= 0:
        var = variables[depth]
        it = stack[depth]
        found = False
        for value in it:
            budget.spend()
            assignment[var] = value
            ok = True
            for chk in checks.get(var, ()):
                if not chk(assignment):
                    ok = False
                    break
            if ok:
                found = True
                break
        if not found:
            assignment.pop(var, None)
            stack.pop()
            depth -= 1
            continue
        if depth == n - 1:
            yield dict(assignment)
            continue
        depth += 1
        stack.append(iter(domain(variables[depth], assignment)))


def first(iterator: Iterator):
    for item in iterator:
        return item
    return None
